#pragma once

#include <string>
#include <vector>

#include "qhorn/horn/registry.hpp"
#include "qhorn/horn/term.hpp"

namespace qhorn::horn::detail {

enum class Status { Proved, Failed, Contradicted };

struct Env {
  Substitution subst;
  int next_var = 0;
  Runtime rt;
};

struct Schedule {
  bool ready = false;
  int category = 0;  // 1 pure, 2 user, 3 state-changing or state-reading, 4 binding equality
  int sub = 0;
};

struct BuiltinResult {
  Status status = Status::Failed;
  std::vector<Env> envs;  // one per way the builtin succeeds
  std::string note;
};

bool is_builtin(const Predicate& p, const Registry& reg, bool user_defined);
Schedule schedule_builtin(const Predicate& p, const Env& env);
BuiltinResult run_builtin(const Predicate& p, const Env& env, const Registry& reg);

}  // namespace qhorn::horn::detail
