#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qhorn/horn/registry.hpp"
#include "qhorn/horn/term.hpp"

namespace qhorn::horn {

enum class Outcome { Proved, Refuted, Failed, Error };

std::string outcome_name(Outcome o);
// 0 proved, 1 refuted, 2 failed, 3 error
int exit_code(Outcome o);

struct TraceEntry {
  int depth = 0;
  std::string event;  // call, clause, builtin, bind, fail, contradiction, refuted, outcome
  std::string text;
};

struct ProofTrace {
  std::vector<TraceEntry> entries;
  std::string to_text() const;
};

struct Limits {
  int max_depth = 64;
  long max_steps = 200000;
};

struct SolveResult {
  Outcome outcome = Outcome::Failed;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> bindings;  // query variable -> printed value
  ProofTrace trace;
  Runtime final_state;                  // quantum state of the first proof, or the initial one
  std::vector<std::string> contradictions;  // coefficient equations forced by single-valuedness clashes
};

// Most general unifier extending s; kets compare up to a global phase.
bool unify(const TermPtr& a, const TermPtr& b, Substitution& s, const Registry& reg);

class Engine {
 public:
  explicit Engine(Program prog, Limits limits = {}, std::uint64_t seed = 20240611);

  SolveResult solve(const Query& q) const;
  SolveResult solve(const std::string& goal) const;

  const Program& program() const { return prog_; }
  const Registry& registry() const { return reg_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Program prog_;
  Registry reg_;
  Limits limits_;
  std::uint64_t seed_;
};

}  // namespace qhorn::horn
