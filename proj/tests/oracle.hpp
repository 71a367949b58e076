// Test-only derivability oracle: saturates every judgment (S subset of the
// alphabet, atom) under Ref/App until fixpoint, with the full powerset of
// contexts materialized up front. Deliberately shares no code or shortcuts
// with the production engine.
#pragma once

#include <vector>

#include "inferon/syntax.hpp"

namespace inferon::testing {

class BruteOracle {
 public:
  BruteOracle(std::vector<InferonicAtom> alphabet, const std::vector<BaseRule>& rules)
      : atoms_(std::move(alphabet)), rules_(rules) {
    std::size_t n = atoms_.size();
    table_.assign(std::size_t{1} << n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < table_.size(); ++s)
      for (std::size_t i = 0; i < n; ++i)
        if (s & (std::size_t{1} << i)) table_[s][i] = 1;
    saturate();
  }

  bool derives(const std::vector<InferonicAtom>& context, const InferonicAtom& goal) const {
    int gi = index_of(goal);
    std::size_t mask = 0;
    for (const auto& a : context) {
      int i = index_of(a);
      if (i < 0) continue;  // outside the alphabet: irrelevant to any rule
      mask |= std::size_t{1} << i;
    }
    if (gi < 0) {
      for (const auto& a : context)
        if (a == goal) return true;
      return false;
    }
    return table_[mask][gi] != 0;
  }

 private:
  int index_of(const InferonicAtom& a) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == a) return static_cast<int>(i);
    return -1;
  }

  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules_) {
        int ci = index_of(r.concl);
        if (ci < 0) continue;
        bool applicable_shape = true;
        std::vector<std::pair<std::size_t, int>> premises;  // (hyp mask, concl index)
        for (const auto& p : r.premises) {
          int qi = index_of(p.concl);
          std::size_t hyps = 0;
          bool ok = qi >= 0;
          for (const auto& h : p.hyps) {
            int hi = index_of(h);
            if (hi < 0) {
              ok = false;
              break;
            }
            hyps |= std::size_t{1} << hi;
          }
          if (!ok) {
            applicable_shape = false;
            break;
          }
          premises.emplace_back(hyps, qi);
        }
        if (!applicable_shape) continue;
        for (std::size_t s = 0; s < table_.size(); ++s) {
          if (table_[s][ci]) continue;
          bool all = true;
          for (const auto& [hyps, qi] : premises) {
            if (!table_[s | hyps][qi]) {
              all = false;
              break;
            }
          }
          if (all) {
            table_[s][ci] = 1;
            changed = true;
          }
        }
      }
    }
  }

  std::vector<InferonicAtom> atoms_;
  std::vector<BaseRule> rules_;
  std::vector<std::vector<char>> table_;
};

}  // namespace inferon::testing
