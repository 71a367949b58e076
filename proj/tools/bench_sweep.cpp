// Benchmark: exhaustive derivability sweep over small bases, run once
// serially and once with the OpenMP kernel, verdicts compared bit for bit.
//
//   bench_sweep [max_rules] [n_atoms]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "inferon/derive.hpp"
#include "inferon/parallel.hpp"
#include "inferon/syntax.hpp"

using namespace inferon;

namespace {

// Rule pool over n propositional letters: axioms, one-premise rules, and
// one-hypothesis hypothetical rules.
std::vector<BaseRule> rule_pool(const std::vector<InferonicAtom>& atoms) {
  std::vector<BaseRule> pool;
  for (const auto& a : atoms) pool.push_back(make_axiom(a));
  for (const auto& p : atoms)
    for (const auto& c : atoms) pool.push_back(make_rule({RulePremise{{}, p}}, c));
  for (const auto& h : atoms)
    for (const auto& p : atoms)
      for (const auto& c : atoms) pool.push_back(make_rule({RulePremise{{h}, p}}, c));
  return pool;
}

std::vector<std::vector<int>> base_index_sets(int pool_size, int max_rules) {
  std::vector<std::vector<int>> out;
  // Singles and all pairs; triples stride through the pool to keep the
  // default run in the seconds range.
  for (int i = 0; i < pool_size; ++i) {
    out.push_back({i});
    for (int j = i + 1; j < pool_size; ++j) {
      out.push_back({i, j});
      if (max_rules >= 3)
        for (int k = j + 1; k < pool_size; k += 7) out.push_back({i, j, k});
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int max_rules = argc > 1 ? std::atoi(argv[1]) : 3;
  int n_atoms = argc > 2 ? std::atoi(argv[2]) : 4;

  std::vector<InferonicAtom> atoms;
  for (int i = 0; i < n_atoms; ++i)
    atoms.push_back(make_iatom(Atom{std::string(1, char('p' + i)), {}}, Polarity::Assertion));

  auto pool = rule_pool(atoms);
  auto sets = base_index_sets(static_cast<int>(pool.size()), max_rules);
  std::printf("pool %zu rules, %zu bases, %d workers\n", pool.size(), sets.size(),
              worker_count());

  long n = static_cast<long>(sets.size());
  std::vector<unsigned> serial(n), parallel_out(n);

  auto sweep = [&](std::vector<unsigned>& out, bool par) {
    parallel_for(n, par, [&](long i) {
      std::vector<BaseRule> rules;
      for (int idx : sets[i]) rules.push_back(pool[idx]);
      Base b("b", std::move(rules));
      unsigned bits = 0;
      int bit = 0;
      for (std::size_t c = 0; c < atoms.size(); ++c) {
        Site ctx{"", {atoms[c]}};
        for (const auto& g : atoms) {
          if (derives(b, ctx, g)) bits |= 1u << bit;
          ++bit;
        }
      }
      Site empty{"", {}};
      for (const auto& g : atoms) {
        if (derives(b, empty, g)) bits |= 1u << bit;
        ++bit;
      }
      out[i] = bits;
    });
  };

  auto t0 = std::chrono::steady_clock::now();
  sweep(serial, false);
  auto t1 = std::chrono::steady_clock::now();
  sweep(parallel_out, true);
  auto t2 = std::chrono::steady_clock::now();

  double ts = std::chrono::duration<double>(t1 - t0).count();
  double tp = std::chrono::duration<double>(t2 - t1).count();
  bool same = serial == parallel_out;
  std::printf("serial   %.3fs\nparallel %.3fs\nspeedup  %.2fx\nverdicts %s\n", ts, tp,
              tp > 0 ? ts / tp : 0.0, same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
