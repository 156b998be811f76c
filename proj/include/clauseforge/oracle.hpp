#pragma once

#include <memory>
#include <vector>

#include "clauseforge/external.hpp"
#include "clauseforge/prover.hpp"

namespace clauseforge {

// Entailment ground truth used by generation and grading. Implementations
// are stateless per call and safe to use from multiple threads.
class EntailmentOracle {
 public:
  virtual ~EntailmentOracle() = default;
  virtual Verdict check(const std::vector<Clause>& premises,
                        const Clause& conjecture) const = 0;
};

class InternalOracle : public EntailmentOracle {
 public:
  explicit InternalOracle(ProverLimits limits) : limits_(limits) {}
  Verdict check(const std::vector<Clause>& premises,
                const Clause& conjecture) const override {
    return prove_internal(premises, conjecture, limits_);
  }

 private:
  ProverLimits limits_;
};

class ExternalOracle : public EntailmentOracle {
 public:
  explicit ExternalOracle(ExternalProverConfig config) : config_(std::move(config)) {}
  Verdict check(const std::vector<Clause>& premises,
                const Clause& conjecture) const override {
    return check_entailment_external(premises, conjecture, config_);
  }

 private:
  ExternalProverConfig config_;
};

}  // namespace clauseforge
