#include "binexec/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace binexec {

int BlockLayout::add_block(std::string name, int size) {
  if (size < 1) throw std::invalid_argument("block size must be >= 1");
  BlockSpec b;
  b.name = std::move(name);
  b.size = size;
  b.offset = state_width;
  blocks.push_back(std::move(b));
  state_width += size;
  return static_cast<int>(blocks.size()) - 1;
}

namespace {

std::uint64_t pack_pattern(const Bit* bits, int n) {
  std::uint64_t key = 0;
  for (int i = 0; i < n; ++i) key |= static_cast<std::uint64_t>(bits[i] ? 1 : 0) << i;
  return key;
}

}  // namespace

void InstructionSet::build_index() {
  const int nb = layout.block_count();
  by_block_.assign(nb, {});
  lookup_.assign(nb, {});
  for (int t = 0; t < template_count(); ++t) {
    RuleTemplate& rt = templates[t];
    rt.output_bits.clear();
    for (int i = 0; i < static_cast<int>(rt.output.size()); ++i)
      if (rt.output[i]) rt.output_bits.push_back(i);
    if (rt.block < 0 || rt.block >= nb) continue;  // caught by validation
    by_block_[rt.block].push_back(t);
    if (static_cast<int>(rt.pattern.size()) == layout.blocks[rt.block].size)
      lookup_[rt.block].emplace_back(pack_pattern(rt.pattern.data(), rt.pattern.size()), t);
  }
  for (auto& v : lookup_) std::sort(v.begin(), v.end());
}

std::optional<int> InstructionSet::match(const State& state, int block) const {
  if (block < 0 || block >= layout.block_count())
    throw std::out_of_range("block index out of range");
  const BlockSpec& b = layout.blocks[block];
  const std::uint64_t key = pack_pattern(state.data() + b.offset, b.size);
  const auto& lk = lookup_[block];
  auto it = std::lower_bound(lk.begin(), lk.end(), std::make_pair(key, -1));
  if (it != lk.end() && it->first == key) return it->second;
  return std::nullopt;
}

ValidationReport validate_instruction_set(const InstructionSet& is) {
  ValidationReport rep;
  const auto& layout = is.layout;
  const int k = layout.state_width;

  std::vector<int> cover(k, 0);
  std::vector<std::string> names;
  for (int b = 0; b < layout.block_count(); ++b) {
    const BlockSpec& spec = layout.blocks[b];
    names.push_back(spec.name);
    if (spec.size < 1)
      rep.issues.push_back({"layout", "block has size < 1", b, -1});
    for (int i = spec.offset; i < spec.offset + spec.size; ++i) {
      if (i < 0 || i >= k) {
        rep.issues.push_back({"layout", "block extends outside the state", b, -1});
        break;
      }
      ++cover[i];
    }
  }
  for (int i = 0; i < k; ++i) {
    if (cover[i] != 1) {
      rep.issues.push_back({"layout", "state bits must belong to exactly one block", -1, -1});
      break;
    }
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    rep.issues.push_back({"layout", "duplicate block names", -1, -1});

  std::vector<std::vector<std::uint64_t>> seen(layout.block_count());
  for (int t = 0; t < is.template_count(); ++t) {
    const RuleTemplate& rt = is.templates[t];
    if (rt.block < 0 || rt.block >= layout.block_count()) {
      rep.issues.push_back({"layout", "template references unknown block", rt.block, t});
      continue;
    }
    if (static_cast<int>(rt.pattern.size()) != layout.blocks[rt.block].size)
      rep.issues.push_back({"length-mismatch", "pattern length != block size", rt.block, t});
    if (static_cast<int>(rt.output.size()) != k)
      rep.issues.push_back({"length-mismatch", "output length != state width", rt.block, t});
    if (static_cast<int>(rt.pattern.size()) == layout.blocks[rt.block].size) {
      const std::uint64_t key = pack_pattern(rt.pattern.data(), rt.pattern.size());
      auto& s = seen[rt.block];
      if (std::find(s.begin(), s.end(), key) != s.end())
        rep.issues.push_back(
            {"functional-mapping", "two templates in one block share a pattern", rt.block, t});
      else
        s.push_back(key);
    }
  }
  return rep;
}

std::vector<int> match_all(const State& state, const InstructionSet& is) {
  std::vector<int> out;
  for (int b = 0; b < is.layout.block_count(); ++b)
    if (auto t = is.match(state, b)) out.push_back(*t);
  return out;
}

State step(const State& state, const InstructionSet& is) {
  State next(state.size(), 0);
  for (int b = 0; b < is.layout.block_count(); ++b) {
    if (auto t = is.match(state, b)) {
      for (std::int32_t i : is.templates[*t].output_bits) next[i] = 1;
    }
  }
  return next;
}

ExecutionTrace run(const State& state, const InstructionSet& is, long long iterations,
                   bool record_states) {
  ExecutionTrace trace;
  if (record_states) trace.states.push_back(state);
  State cur = state;
  for (long long t = 0; t < iterations; ++t) {
    trace.matched.push_back(match_all(cur, is));
    State next(cur.size(), 0);
    for (int id : trace.matched.back())
      for (std::int32_t i : is.templates[id].output_bits) next[i] = 1;
    if (!trace.fixpoint_at && next == cur) trace.fixpoint_at = static_cast<int>(t);
    cur.swap(next);
    if (record_states) trace.states.push_back(cur);
  }
  if (!record_states) trace.states.push_back(cur);
  return trace;
}

ConflictProfile conflict_profile(const InstructionSet& is) {
  ConflictProfile p;
  p.writers.assign(is.state_width(), 0);
  for (const RuleTemplate& rt : is.templates)
    for (std::int32_t i : rt.output_bits) ++p.writers[i];
  for (int w : p.writers) p.max_conflicts = std::max(p.max_conflicts, w - 1);
  p.max_conflicts = std::max(p.max_conflicts, 0);
  return p;
}

std::uint64_t pack_bits(const State& state, const std::vector<int>& positions) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (state[positions[i]]) v |= 1ull << i;
  return v;
}

void place_bits(State& state, const std::vector<int>& positions, std::uint64_t value) {
  for (std::size_t i = 0; i < positions.size(); ++i)
    state[positions[i]] = (value >> i) & 1 ? 1 : 0;
}

std::string to_bit_string(const std::vector<Bit>& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

std::vector<Bit> from_bit_string(const std::string& s) {
  std::vector<Bit> bits(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      bits[i] = 1;
    else if (s[i] != '0')
      throw std::invalid_argument("bit string must contain only 0/1");
  }
  return bits;
}

}  // namespace binexec
