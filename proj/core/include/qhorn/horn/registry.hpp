#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qhorn/fockweyl.hpp"
#include "qhorn/horn/term.hpp"
#include "qhorn/linalg.hpp"
#include "qhorn/qwalk.hpp"

namespace qhorn::horn {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

struct OpEntry {
  ComplexMatrix matrix;
  bool antiunitary = false;  // applied as U K, K complex conjugation
};

struct ProbeRecord {
  std::string system;
  ComplexMatrix observable;
};

// Mutable quantum state threaded through a derivation; copied per branch.
struct Runtime {
  std::vector<std::string> names;
  std::vector<std::size_t> dims;
  ComplexMatrix rho = ComplexMatrix::identity(1);
  std::map<std::string, OpEntry> generated;
  int gensym = 0;
  std::map<std::string, ProbeRecord> probes;
  qwalk::WalkState walk = qwalk::WalkState::localized();
  std::map<std::string, fockweyl::ExponentialVectorSum> fock;
  std::mt19937_64 rng;
  std::vector<std::string> records;  // one line per measurement on this branch

  // -1 when absent
  int index_of(const std::string& name) const;
  std::vector<std::size_t> indices_of(const std::vector<std::string>& names) const;
  void add_system(const std::string& name, const ComplexMatrix& local_state);
  ComplexMatrix reduced(const std::vector<std::string>& names) const;
  std::string fresh_name(const std::string& stem);
};

// Load-time view of a program: parameters, named operators and states, systems.
class Registry {
 public:
  // Throws ParseError on unbound names or malformed directives.
  static Registry load(const Program& prog);

  ParamTable params;
  std::map<std::string, OpEntry> ops;
  std::map<std::string, KetExpr> states;
  std::vector<SystemDecl> systems;
  std::map<std::string, ComplexMatrix> initial;  // per-system density
  std::map<std::string, FockDecl> fock;

  const OpEntry* find_op(const std::string& name) const;
  bool is_system(const std::string& name) const;
  Runtime initial_runtime(std::uint64_t seed) const;
};

}  // namespace qhorn::horn
