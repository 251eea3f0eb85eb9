#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace binexec {

using Bit = std::uint8_t;

// Raw machine state: one bit per coordinate, length k.
using State = std::vector<Bit>;

struct BlockSpec {
  std::string name;
  int size = 0;
  int offset = 0;
};

// Partition of the k state bits into named contiguous blocks.
struct BlockLayout {
  std::vector<BlockSpec> blocks;
  int state_width = 0;  // k

  // Appends a block at the current end of the state; returns its index.
  int add_block(std::string name, int size);
  int block_count() const { return static_cast<int>(blocks.size()); }
};

// One rewrite rule: when a block's bits equal `pattern`, contribute `output`
// (length k) to the next state. Outputs of all matched rules are OR-ed.
struct RuleTemplate {
  int block = 0;
  std::vector<Bit> pattern;
  std::vector<Bit> output;
  std::vector<std::int32_t> output_bits;  // indices of set output bits (cached)
};

struct Metadata {
  std::string task;          // permutation | addition | multiplication | sbn | custom
  long long iterations = 0;  // recommended run length
  std::map<std::string, long long> params;
  std::vector<int> perm;  // permutation map (1-based), empty for other tasks
};

struct InstructionSet {
  BlockLayout layout;
  std::vector<RuleTemplate> templates;
  Metadata meta;

  // Derived lookup structures; call after templates change.
  void build_index();

  int state_width() const { return layout.state_width; }
  int template_count() const { return static_cast<int>(templates.size()); }
  const std::vector<int>& block_templates(int block) const { return by_block_[block]; }

  // Index of the unique template of `block` matching `state`, or nullopt.
  std::optional<int> match(const State& state, int block) const;

 private:
  std::vector<std::vector<int>> by_block_;
  // per block: (packed pattern, template id), sorted by pattern key
  std::vector<std::vector<std::pair<std::uint64_t, int>>> lookup_;
};

struct ValidationIssue {
  std::string kind;  // "functional-mapping" | "length-mismatch" | "layout" | ...
  std::string message;
  int block = -1;
  int tmpl = -1;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_instruction_set(const InstructionSet& is);

// Ids of all templates matched by `state`, ascending by block.
std::vector<int> match_all(const State& state, const InstructionSet& is);

// One synchronous update: OR of the outputs of all matched templates.
State step(const State& state, const InstructionSet& is);

struct ExecutionTrace {
  std::vector<State> states;              // length iterations+1
  std::vector<std::vector<int>> matched;  // per step
  std::optional<int> fixpoint_at;         // first t with states[t+1] == states[t]
};

// Applies `step` exactly `iterations` times (fixpoint detection is advisory).
ExecutionTrace run(const State& state, const InstructionSet& is, long long iterations,
                   bool record_states = true);

struct ConflictProfile {
  std::vector<int> writers;  // per coordinate: number of templates setting it
  int max_conflicts = 0;     // max over coordinates of (writers - 1), floored at 0
};

ConflictProfile conflict_profile(const InstructionSet& is);

// Helpers shared by the task builders and tests.
std::uint64_t pack_bits(const State& state, const std::vector<int>& positions);
void place_bits(State& state, const std::vector<int>& positions, std::uint64_t value);
std::string to_bit_string(const std::vector<Bit>& bits);
std::vector<Bit> from_bit_string(const std::string& s);

}  // namespace binexec
