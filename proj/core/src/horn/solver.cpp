#include "qhorn/horn/solver.hpp"

#include <functional>
#include <map>

#include "builtins.hpp"
#include "qhorn/errors.hpp"
#include "qhorn/horn/eval.hpp"
#include "qhorn/horn/parser.hpp"

namespace qhorn::horn {

using detail::Env;
using detail::Status;

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return "proved";
    case Outcome::Refuted:
      return "refuted";
    case Outcome::Failed:
      return "failed";
    case Outcome::Error:
      return "error";
  }
  return "error";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return 0;
    case Outcome::Refuted:
      return 1;
    case Outcome::Failed:
      return 2;
    case Outcome::Error:
      return 3;
  }
  return 3;
}

std::string ProofTrace::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    out.append(static_cast<std::size_t>(2 * e.depth), ' ');
    out += e.event;
    if (!e.text.empty()) out += " " + e.text;
    out += "\n";
  }
  return out;
}

namespace {

// Splits value v = left ⊗ right where one side is a fixed basis ket.
std::optional<KetExpr> divide(const KetExpr& v, const KetExpr& known, bool known_on_right, const ParamTable& params) {
  if (known.terms().size() != 1 || known.is_scalar() || v.is_scalar()) return std::nullopt;
  const auto& [kl, kc] = *known.terms().begin();
  const cplx c = kc.evaluate(params);
  if (std::abs(c) < 1e-15) return std::nullopt;
  KetExpr out;
  for (const auto& [label, coef] : v.terms()) {
    if (label.size() <= kl.size()) return std::nullopt;
    const std::size_t at = known_on_right ? label.size() - kl.size() : 0;
    if (label.compare(at, kl.size(), kl) != 0) return std::nullopt;
    const std::string rest = known_on_right ? label.substr(0, at) : label.substr(kl.size());
    out += KetExpr::basis(rest, coef * Poly(1.0 / c));
  }
  return out;
}

}  // namespace

bool unify(const TermPtr& a0, const TermPtr& b0, Substitution& s, const Registry& reg) {
  const TermPtr a = deref(a0, s), b = deref(b0, s);
  if (a == b) return true;
  if (a->kind == TermKind::Var || b->kind == TermKind::Var) {
    const TermPtr& v = a->kind == TermKind::Var ? a : b;
    const TermPtr& o = a->kind == TermKind::Var ? b : a;
    if (o->kind == TermKind::Var && o->var_id == v->var_id) return true;
    if (occurs(v->var_id, o, s)) return false;
    s[v->var_id] = o;
    return true;
  }
  const bool ga = is_ground(a, s), gb = is_ground(b, s);
  std::optional<Value> va, vb;
  if (ga) va = evaluate(a, s, reg, nullptr);
  if (gb) vb = evaluate(b, s, reg, nullptr);
  if (va && vb) return values_equal(*va, *vb, reg.params);
  // a tensor pattern against a ket value, one factor known
  for (int flip = 0; flip < 2; ++flip) {
    const TermPtr& pat = flip ? b : a;
    const auto& val = flip ? va : vb;
    if (pat->kind != TermKind::Compound || pat->name != "⊗" || pat->args.size() != 2 || !val ||
        val->kind != Value::Kind::Ket)
      continue;
    for (int side = 0; side < 2; ++side) {
      const TermPtr& known = pat->args[side == 0 ? 1 : 0];
      const TermPtr& unknown = pat->args[side == 0 ? 0 : 1];
      if (!is_ground(known, s)) continue;
      const auto kv = evaluate(known, s, reg, nullptr);
      if (!kv || kv->kind != Value::Kind::Ket) continue;
      const auto rest = divide(val->ket, kv->ket, side == 0, reg.params);
      if (!rest) return false;
      return unify(unknown, Term::ket_term(*rest), s, reg);
    }
  }
  if (a->kind == TermKind::Compound && b->kind == TermKind::Compound) {
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!unify(a->args[i], b->args[i], s, reg)) return false;
    return true;
  }
  if (a->kind == b->kind && (a->kind == TermKind::Atom || a->kind == TermKind::OpRef)) return a->name == b->name;
  return false;
}

namespace {

struct Frame {
  std::vector<Predicate> goals;
  int depth = 0;
};
using Goals = std::vector<Frame>;
using Cont = std::function<Status(Env&)>;

struct StepLimitExceeded {};

struct Accumulator {
  bool any = false, proved = false, failed = false;
  void add(Status s) {
    any = true;
    if (s == Status::Proved) proved = true;
    if (s == Status::Failed) failed = true;
  }
  Status get() const {
    if (proved) return Status::Proved;
    if (failed || !any) return Status::Failed;
    return Status::Contradicted;
  }
};

class Solver {
 public:
  Solver(const Program& prog, const Registry& reg, const Limits& limits) : prog_(prog), reg_(reg), limits_(limits) {
    for (std::size_t i = 0; i < prog.clauses.size(); ++i) {
      const Clause& c = prog.clauses[i];
      normalized_.push_back(normalize_clause(c));
      if (c.head) index_[{c.head->functor, c.head->args.size()}].push_back(i);
    }
  }

  ProofTrace trace;
  std::vector<std::string> contradictions;
  bool depth_hit = false;

  void log(int depth, const std::string& event, const std::string& text) { trace.entries.push_back({depth, event, text}); }

  Status solve(Goals goals, Env env, const Cont& k, bool all) {
    if (++steps_ > limits_.max_steps) throw StepLimitExceeded{};
    while (!goals.empty() && goals.back().goals.empty()) goals.pop_back();
    if (goals.empty()) return k(env);

    Frame& top = goals.back();
    std::size_t best = top.goals.size();
    detail::Schedule best_s;
    for (std::size_t i = 0; i < top.goals.size(); ++i) {
      const detail::Schedule s = schedule(top.goals[i], env);
      if (!s.ready) continue;
      if (best == top.goals.size() || s.category < best_s.category ||
          (s.category == best_s.category && s.sub < best_s.sub)) {
        best = i;
        best_s = s;
      }
    }
    if (best == top.goals.size()) {
      std::string pending;
      for (const auto& g : top.goals) pending += (pending.empty() ? "" : ", ") + to_string(resolve(g, env.subst));
      log(top.depth, "fail", "floundered: " + pending);
      return Status::Failed;
    }
    const Predicate g = top.goals[best];
    const int depth = top.depth;
    top.goals.erase(top.goals.begin() + static_cast<long>(best));
    const std::string shown = to_string(resolve(g, env.subst));
    log(depth, "call", shown);

    if (g.negated) return negation(g, std::move(goals), env, depth, k, all);
    if (detail::is_builtin(g, reg_, user_defined(g))) return builtin(g, std::move(goals), env, depth, k, all, shown);
    if (depth >= limits_.max_depth) {
      depth_hit = true;
      log(depth, "fail", "depth limit exceeded at " + shown);
      return Status::Failed;
    }
    if (g.decoration == 2) return single_valued(g, std::move(goals), env, depth, k, all, shown);
    const Status s = resolve_user(g, std::move(goals), env, depth, k, all);
    if (s == Status::Failed) log(depth, "fail", shown);
    return s;
  }

 private:
  bool user_defined(const Predicate& g) const { return index_.count({g.functor, g.args.size()}) > 0; }

  detail::Schedule schedule(const Predicate& g, const Env& env) const {
    if (g.negated || !detail::is_builtin(g, reg_, user_defined(g))) return {true, 2, 0};
    return detail::schedule_builtin(g, env);
  }

  void log_bindings(const Predicate& g, const Env& before, const Env& after, int depth) {
    std::vector<int> ids;
    std::vector<TermPtr> shown;
    for (const auto& a : g.args) {
      shown.push_back(resolve(a, before.subst));
      collect_vars(shown.back(), ids);
    }
    std::string text;
    for (const int id : ids) {
      const TermPtr v = Term::var("", id);
      const TermPtr r = resolve(v, after.subst);
      if (r->kind == TermKind::Var && r->var_id == id) continue;
      std::string name;
      for (const auto& a : shown) find_name(a, id, name);
      text += (text.empty() ? "" : ", ") + name + " = " + to_string(r);
    }
    if (!text.empty()) log(depth, "bind", text);
  }

  static void find_name(const TermPtr& t, int id, std::string& name) {
    if (!name.empty()) return;
    if (t->kind == TermKind::Var && t->var_id == id) name = t->name;
    if (t->kind == TermKind::Compound)
      for (const auto& a : t->args) find_name(a, id, name);
  }

  Status negation(const Predicate& g, Goals goals, const Env& env, int depth, const Cont& k, bool all) {
    Predicate pos = g;
    pos.negated = false;
    const Status s = solve(Goals{Frame{{pos}, depth}}, env, [](Env&) { return Status::Proved; }, false);
    const std::string shown = to_string(resolve(pos, env.subst));
    if (s == Status::Contradicted) {
      log(depth, "refuted", shown);
      return solve(std::move(goals), env, k, all);
    }
    log(depth, "fail", "negation of " + shown + " not established");
    return Status::Failed;
  }

  Status builtin(const Predicate& g, Goals goals, const Env& env, int depth, const Cont& k, bool all,
                 const std::string& shown) {
    const detail::BuiltinResult r = detail::run_builtin(g, env, reg_);
    const std::string name = g.kind == PredKind::Equal ? "=" : g.kind == PredKind::Commutator ? "commutes" : g.functor;
    if (r.status == Status::Contradicted) {
      log(depth, "contradiction", shown + (r.note.empty() ? "" : ": " + r.note));
      return Status::Contradicted;
    }
    if (r.envs.empty()) {
      log(depth, "fail", shown + (r.note.empty() ? "" : ": " + r.note));
      return Status::Failed;
    }
    log(depth, "builtin", name + (r.note.empty() ? "" : ": " + r.note));
    Accumulator acc;
    for (const Env& e : r.envs) {
      log_bindings(g, env, e, depth);
      const Status s = solve(goals, e, k, all);
      acc.add(s);
      if (s == Status::Proved && !all) return s;
    }
    return acc.get();
  }

  Status resolve_user(const Predicate& g, const Goals& rest, const Env& env, int depth, const Cont& k, bool all) {
    Accumulator acc;
    const auto it = index_.find({g.functor, g.args.size()});
    if (it == index_.end()) {
      log(depth, "fail", "no clause for " + g.functor + "/" + std::to_string(g.args.size()));
      return Status::Failed;
    }
    for (const std::size_t idx : it->second) {
      const Clause& c = normalized_[idx];
      Env e = env;
      const int off = e.next_var;
      e.next_var += c.num_vars;
      const Predicate head = offset_vars(*c.head, off);
      bool ok = true;
      for (std::size_t i = 0; ok && i < head.args.size(); ++i) ok = unify(head.args[i], g.args[i], e.subst, reg_);
      if (!ok) continue;
      log(depth, "clause", "#" + std::to_string(idx + 1) + " " + to_string(prog_.clauses[idx]));
      log_bindings(g, env, e, depth);
      Goals next = rest;
      Frame body{{}, depth + 1};
      for (const auto& p : c.body) body.goals.push_back(offset_vars(p, off));
      next.push_back(std::move(body));
      const Status s = solve(std::move(next), std::move(e), k, all);
      acc.add(s);
      if (s == Status::Proved && !all) return s;
    }
    return acc.get();
  }

  // A decoration-2 predicate denotes a map; every derivation must give the same outputs.
  Status single_valued(const Predicate& g, Goals goals, const Env& env, int depth, const Cont& k, bool all,
                       const std::string& shown) {
    std::vector<Env> sols;
    const Cont collect = [&sols](Env& e) {
      sols.push_back(e);
      return Status::Proved;
    };
    const Status s = resolve_user(g, Goals{}, env, depth, collect, true);
    if (sols.empty()) {
      if (s == Status::Failed) log(depth, "fail", shown);
      return s;
    }
    for (std::size_t j = 1; j < sols.size(); ++j) {
      for (std::size_t i = 0; i < g.args.size(); ++i) {
        const TermPtr x = resolve(g.args[i], sols[0].subst), y = resolve(g.args[i], sols[j].subst);
        const auto vx = evaluate(x, sols[0].subst, reg_, &sols[0].rt);
        const auto vy = evaluate(y, sols[j].subst, reg_, &sols[j].rt);
        const bool same = (vx && vy) ? values_equal(*vx, *vy, reg_.params) : to_string(x) == to_string(y);
        if (same) continue;
        std::string text = shown + ": derivations disagree, " + to_string(y) + " vs " + to_string(x);
        if (vx && vy && vx->kind == Value::Kind::Ket && vy->kind == Value::Kind::Ket) {
          const auto eqs = coefficient_equations(vy->ket, vx->ket);
          std::string joined;
          for (const auto& e : eqs) {
            joined += (joined.empty() ? "" : ", ") + e;
            contradictions.push_back(e);
          }
          text += "; requires " + joined;
        }
        log(depth, "contradiction", text);
        return Status::Contradicted;
      }
    }
    log_bindings(g, env, sols[0], depth);
    return solve(std::move(goals), sols[0], k, all);
  }

  const Program& prog_;
  const Registry& reg_;
  const Limits& limits_;
  std::vector<Clause> normalized_;
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> index_;
  long steps_ = 0;
};

}  // namespace

Engine::Engine(Program prog, Limits limits, std::uint64_t seed)
    : prog_(std::move(prog)), reg_(Registry::load(prog_)), limits_(limits), seed_(seed) {
  if (limits_.max_depth <= 0 || limits_.max_steps <= 0) throw PreconditionError("solve limits must be positive");
}

SolveResult Engine::solve(const std::string& goal) const { return solve(parse_query(goal)); }

SolveResult Engine::solve(const Query& q) const {
  SolveResult res;
  Solver solver(prog_, reg_, limits_);
  Env env{{}, q.num_vars, reg_.initial_runtime(seed_)};
  res.final_state = env.rt;
  std::string text;
  for (const auto& g : q.goals) text += (text.empty() ? "" : ", ") + to_string(g);
  solver.log(0, "query", text);

  std::optional<Env> answer;
  const Cont root = [&answer](Env& e) {
    answer = e;
    return Status::Proved;
  };
  try {
    if (q.goals.size() == 1 && q.goals[0].negated) {
      Predicate pos = q.goals[0];
      pos.negated = false;
      const Status s = solver.solve(Goals{Frame{{pos}, 0}}, env, root, false);
      if (s == Status::Contradicted) {
        res.outcome = Outcome::Refuted;
      } else {
        res.outcome = Outcome::Failed;
        res.reason = s == Status::Proved ? "goal is provable" : "no contradiction reached";
      }
      answer.reset();
    } else {
      const Status s = solver.solve(Goals{Frame{q.goals, 0}}, env, root, false);
      if (s == Status::Proved) {
        res.outcome = Outcome::Proved;
      } else {
        res.outcome = Outcome::Failed;
        res.reason = s == Status::Contradicted ? "contradiction" : solver.depth_hit ? "depth limit exceeded" : "no proof";
      }
    }
  } catch (const StepLimitExceeded&) {
    res.outcome = Outcome::Failed;
    res.reason = "step limit exceeded";
    answer.reset();
  } catch (const QhornError& e) {
    res.outcome = Outcome::Error;
    res.reason = e.what();
    answer.reset();
  }
  if (answer) {
    for (const auto& [name, id] : q.variables) {
      if (name == "_") continue;
      const TermPtr t = resolve(Term::var(name, id), answer->subst);
      std::string shown = to_string(t);
      // generated operators have no meaningful name; show their entries
      if (t->kind == TermKind::OpRef && answer->rt.generated.count(t->name)) {
        Value v = Value::of_matrix(answer->rt.generated.at(t->name).matrix);
        shown = v.to_string();
      }
      res.bindings.emplace_back(name, shown);
    }
    res.final_state = answer->rt;
  }
  std::string terminal = outcome_name(res.outcome);
  if (!res.reason.empty()) terminal += " (" + res.reason + ")";
  solver.log(0, "outcome", terminal);
  res.trace = std::move(solver.trace);
  res.contradictions = std::move(solver.contradictions);
  return res;
}

}  // namespace qhorn::horn
