// Copyright 2026 The bellpair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "bellpair/bellpair.hpp"
#include "oracle.hpp"

using namespace bellpair;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CVector rand_qubit(std::mt19937_64& rng) { return random_gaussian_vector(2, rng).normalized(); }

// 1. Dependency tables of the four-qubit counterexample.
void counterexample_tables(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  auto outcome = build_table(fixtures::counterexample(), {1, 2});
  out.require(std::holds_alternative<DependencyTable>(outcome), "table is complete");
  if (!out.pass) return;
  const auto& t = std::get<DependencyTable>(outcome);
  const CVector alpha[4] = {kets::zero(), kets::zero(), kets::zero(), kets::one()};
  const CVector beta[4] = {kets::zero(), kets::one(), kets::one(), kets::one()};
  double worst = 0;
  for (std::uint64_t k = 0; k < 4; ++k) {
    worst = std::max(worst, (t.at(k).alpha - alpha[k]).norm());
    worst = std::max(worst, (t.at(k).beta - beta[k]).norm());
  }
  out.require(t.entries().size() == 4, "4 entries");
  out.require(worst <= 1e-9, "alpha/beta entries");
  out.require(!partition_check(t).has_value(), "partition absent");
  double secs = seconds_since(t0);
  out.require(secs < 1.0, "runtime < 1 s");
  out.detail << "max entry error " << worst << ", partition absent, " << secs * 1e3 << " ms";
}

// 2. S1 fails, S2 certifies with |+>|+>.
void counterexample_rescue(Outcome& out) {
  const PureState psi = fixtures::counterexample();
  StrategyLadder s1;
  s1.max_stage = 1;
  bool s1_failed = false;
  try {
    find_entangling_projection(psi, {1, 2}, s1);
  } catch (const SearchExhaustedError&) {
    s1_failed = true;
  }
  out.require(s1_failed, "S1 finds nothing");
  auto cert = find_entangling_projection(psi, {1, 2});
  CVector expected(4);
  expected << 1, 2, 0, 1;
  expected /= std::sqrt(6.0);
  const double s_max = max_chsh(cert.residual).s_max;
  out.require(cert.strategy_used == Strategy::S2, "strategy S2");
  out.require(distance_up_to_phase(cert.assignments[0].coords(), kets::plus()) < 1e-12 &&
                  distance_up_to_phase(cert.assignments[1].coords(), kets::plus()) < 1e-12,
              "assignments |+>|+>");
  out.require(distance_up_to_phase(cert.residual.amps(), expected) < 1e-9, "residual (|00>+2|01>+|11>)/sqrt6");
  out.require(std::abs(cert.concurrence - 1.0 / 3.0) <= 1e-9, "concurrence 1/3");
  out.require(std::abs(s_max - 2.0 * std::sqrt(10.0) / 3.0) <= 1e-9, "s_max 2 sqrt(10)/3");
  char buf[160];
  std::snprintf(buf, sizeof buf, "strategy %s, concurrence %.12f, s_max %.12f", to_string(cert.strategy_used),
                cert.concurrence, s_max);
  out.detail << buf;
}

// 3. Every pair of 300 Haar-random states certifies.
void all_pairs_suite(Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  int pairs = 0;
  std::map<Strategy, int> by_stage;
  double min_c = 1.0, min_s = 4.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 3;
    PureState s = haar_state(std::vector<int>(static_cast<std::size_t>(n), 2), rng);
    for (const auto& [pair, res] : certify_all_pairs(s, {}, static_cast<std::uint64_t>(trial))) {
      ++pairs;
      const auto* cert = std::get_if<ProjectionCertificate>(&res);
      out.require(cert != nullptr, "pair certified");
      if (!cert) continue;
      const double s_max = max_chsh(cert->residual).s_max;
      out.require(cert->concurrence >= 1e-8, "concurrence >= 1e-8");
      out.require(s_max > 2.0 + 1e-9, "s_max > 2");
      out.require(verify_certificate(s, *cert), "certificate re-verifies");
      ++by_stage[cert->strategy_used];
      min_c = std::min(min_c, cert->concurrence);
      min_s = std::min(min_s, s_max);
    }
  }
  double secs = seconds_since(t0);
  out.require(secs < 300.0, "runtime < 5 min");
  out.detail << pairs << " pairs, min concurrence " << min_c << ", min s_max " << min_s << ", stages";
  for (const auto& [s, count] : by_stage) out.detail << " " << to_string(s) << "=" << count;
  out.detail << ", " << secs << " s";
}

// 4. No flip changes both alpha and beta; an injected double flip is caught by |+>.
void single_flip_exclusivity(Outcome& out) {
  std::mt19937_64 rng(4);
  int flips_checked = 0, injected = 0;
  double min_injected_c = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + trial % 3;
    const int m = n - 2;
    const std::uint64_t count = std::uint64_t{1} << m;
    const PartyPair keep = trial % 2 ? PartyPair{1, 2} : PartyPair{2, n};
    // Random split of the key bits: alpha reads the bits in `mask`, beta the rest.
    const std::uint64_t mask = rng() % count;
    std::vector<CVector> fa(count), fb(count);
    for (auto& v : fa) v = rand_qubit(rng);
    for (auto& v : fb) v = rand_qubit(rng);
    std::vector<CVector> alpha(count), beta(count);
    for (std::uint64_t k = 0; k < count; ++k) {
      alpha[k] = fa[k & mask];
      beta[k] = fb[k & ~mask & (count - 1)];
    }
    auto make = [&] {
      return oracle::planted(n, keep, [&](std::uint64_t k) { return alpha[k]; },
                             [&](std::uint64_t k) { return beta[k]; });
    };
    PureState s = make();
    auto outcome = build_table(s, keep);
    out.require(std::holds_alternative<DependencyTable>(outcome), "all-product table");
    if (!std::holds_alternative<DependencyTable>(outcome)) continue;
    const auto& t = std::get<DependencyTable>(outcome);
    for (int party : t.projected_parties()) {
      const std::uint64_t bit = t.bit_of(party);
      for (std::uint64_t ctx = 0; ctx < count; ++ctx) {
        if (ctx & bit) continue;
        ++flips_checked;
        out.require(!(depends_on(t, Side::Alpha, party, ctx) && depends_on(t, Side::Beta, party, ctx)),
                    "no double flip");
      }
    }

    // Inject: at one index and context, make both alpha and beta change.
    const int idx = t.projected_parties()[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(m))];
    const std::uint64_t bit = t.bit_of(idx);
    const std::uint64_t ctx = (rng() % count) & ~bit;
    alpha[ctx] = rand_qubit(rng);
    alpha[ctx | bit] = rand_qubit(rng);
    beta[ctx] = rand_qubit(rng);
    beta[ctx | bit] = rand_qubit(rng);
    PureState v = make();
    auto vt = std::get<DependencyTable>(build_table(v, keep));
    out.require(depends_on(vt, Side::Alpha, idx, ctx) && depends_on(vt, Side::Beta, idx, ctx), "violation planted");
    std::vector<LocalVector> assign;
    for (int party : vt.projected_parties()) {
      if (party == idx) assign.emplace_back(party, kets::plus());
      else assign.emplace_back(party, CVector::Unit(2, (ctx & vt.bit_of(party)) ? 1 : 0));
    }
    double c = concurrence(project(v, assign).residual);
    out.require(c >= 1e-8, "|+> projection entangles");
    min_injected_c = std::min(min_injected_c, c);
    ++injected;
  }
  out.detail << flips_checked << " flips checked, " << injected << " violations injected, min |+> concurrence "
             << min_injected_c;
}

// 5. Qudit reduction keeps entanglement; lifted projections reproduce residuals.
void qudit_reduction(Outcome& out) {
  std::mt19937_64 rng(5);
  double worst = 0;
  int lifted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    PureState s = haar_state(std::vector<int>(static_cast<std::size_t>(n), 3), rng);
    ReductionTrace trace = reduce_to_qubits(s);
    out.require(!is_fully_product(trace.output), "output entangled");
    if (n == 2) {
      std::vector<int> both = {1, 2};
      worst = std::max(worst, distance_up_to_phase(restrict_to_reduced(trace, s, both).amps(), trace.output.amps()));
      continue;
    }
    const PartyPair keep{1, n};
    auto cert = find_entangling_projection(trace.output, keep, {}, static_cast<std::uint64_t>(trial));
    std::vector<LocalVector> up;
    for (const auto& a : cert.assignments) up.push_back(embed_projection(trace, a));
    auto r = project(s, up);
    std::vector<int> kept = {keep.first, keep.second};
    double d = distance_up_to_phase(restrict_to_reduced(trace, r.residual, kept).amps(), cert.residual.amps());
    worst = std::max(worst, d);
    ++lifted;
  }
  out.require(worst <= 1e-9, "lifted residuals within 1e-9");
  out.detail << "200 states, " << lifted << " lifted certificates, max residual distance " << worst;
}

// 6. Some Hadamard subset clears every amplitude.
void hadamard_basis_fix(Outcome& out) {
  int exhaustive = 0;
  for (int n = 1; n <= 3; ++n) {
    const std::size_t size = std::size_t{1} << n;
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < size; ++i) patterns *= 3;
    for (std::size_t code = 1; code < patterns; ++code) {
      CVector amps(static_cast<Eigen::Index>(size));
      std::size_t c = code;
      for (std::size_t i = 0; i < size; ++i, c /= 3) amps[static_cast<Eigen::Index>(i)] = static_cast<double>(c % 3) - 1.0;
      if (amps.norm() == 0) continue;
      PureState s = PureState::normalized(std::vector<int>(static_cast<std::size_t>(n), 2), amps);
      // Independent check over all 2^N subsets.
      bool some = false;
      for (std::uint32_t mask = 0; mask < (1u << n) && !some; ++mask) {
        std::vector<int> sub;
        for (int p = 1; p <= n; ++p)
          if (mask & (1u << (p - 1))) sub.push_back(p);
        some = oracle::hadamard_layer(s, sub).cwiseAbs().minCoeff() > 1e-9;
      }
      out.require(some, "a subset exists");
      BasisFix f = fix_nonvanishing(s);
      out.require(f.min_abs > 1e-9, "fix_nonvanishing succeeds");
      ++exhaustive;
    }
  }
  std::mt19937_64 rng(6);
  double min_abs = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 2;
    PureState s = haar_state(std::vector<int>(static_cast<std::size_t>(n), 2), rng);
    CVector a = s.amps();
    const auto zeros = 1 + rng() % static_cast<std::uint64_t>(a.size() - 1);
    for (std::uint64_t k = 0; k < zeros; ++k) a[static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(a.size()))] = 0;
    if (a.norm() == 0) a[0] = 1;
    BasisFix f = fix_nonvanishing(PureState::normalized(s.dims(), a));
    out.require(f.min_abs > 1e-9, "planted-zero fix");
    min_abs = std::min(min_abs, f.min_abs);
  }
  out.detail << exhaustive << " sign-pattern states (N<=3), 200 planted-zero states, min |amp| " << min_abs;
}

// 7. Horodecki value equals the closed form; settings attain it.
void gisin_closure(Outcome& out) {
  std::mt19937_64 rng(7);
  double closure = 0, settings = 0, oracle_gap = 0, top = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PureState s = haar_state({2, 2}, rng);
    ChshCertificate c = max_chsh(s);
    closure = std::max(closure, std::abs(c.s_max - gisin_value(concurrence(s))));
    settings = std::max(settings, std::abs(evaluate_chsh(s, c.settings) - c.s_max));
    oracle_gap = std::max(oracle_gap, std::abs(c.s_max - oracle::horodecki(s.amps())));
    top = std::max(top, c.s_max);
  }
  out.require(closure <= 1e-9, "closed form within 1e-9");
  out.require(top <= 2.0 * std::sqrt(2.0) + 1e-9, "Tsirelson bound");
  out.require(settings <= 1e-7, "settings within 1e-7");
  out.require(oracle_gap <= 1e-9, "explicit-trace oracle");
  out.detail << "max |s - 2sqrt(1+C^2)| " << closure << ", max |S(settings) - s| " << settings << ", max s "
             << top;
}

// 8. A planted index partition is recovered and the induced cut is product.
void factorization_converse(Outcome& out) {
  std::mt19937_64 rng(8);
  int states = 0;
  double worst_rank_coeff = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const int m = n - 2;
    const std::uint64_t count = std::uint64_t{1} << m;
    std::uniform_int_distribution<int> pd(1, n);
    int p = pd(rng), q = pd(rng);
    while (q == p) q = pd(rng);
    const PartyPair keep = ordered_pair({p, q});
    const std::uint64_t mask = rng() % count;
    std::vector<CVector> fa(count), fb(count);
    std::vector<Complex> ca(count), cb(count);
    for (std::uint64_t k = 0; k < count; ++k) {
      fa[k] = rand_qubit(rng);
      fb[k] = rand_qubit(rng);
      ca[k] = std::polar(0.5 + (rng() % 1000) / 1000.0, (rng() % 1000) * 0.00628);
      cb[k] = std::polar(0.5 + (rng() % 1000) / 1000.0, (rng() % 1000) * 0.00628);
    }
    const std::uint64_t rest = ~mask & (count - 1);
    PureState s = oracle::planted(
        n, keep, [&](std::uint64_t k) { return fa[k & mask]; }, [&](std::uint64_t k) { return fb[k & rest]; },
        [&](std::uint64_t k) { return ca[k & mask] * cb[k & rest]; });
    std::vector<int> projected = detail::projected_parties(n, keep), S, Sbar;
    for (std::size_t i = 0; i < projected.size(); ++i)
      ((mask >> (projected.size() - 1 - i)) & 1 ? S : Sbar).push_back(projected[i]);

    auto outcome = build_table(s, keep);
    out.require(std::holds_alternative<DependencyTable>(outcome), "complete table");
    if (!std::holds_alternative<DependencyTable>(outcome)) continue;
    auto part = partition_check(std::get<DependencyTable>(outcome));
    out.require(part.has_value(), "partition present");
    if (!part) continue;
    out.require(part->alpha_side == S && part->beta_side == Sbar && part->beta_dependent == Sbar, "(S, S-bar)");
    Bipartition cut = part->induced_cut(n, keep);
    out.require(is_product_across(s, cut), "induced cut product");
    auto coeffs = oracle::schmidt_coefficients(s, cut.side_a());
    if (coeffs.size() > 1) worst_rank_coeff = std::max(worst_rank_coeff, coeffs[1] * coeffs[1]);
    ++states;
  }
  out.detail << states << " planted states, largest second reduced eigenvalue " << worst_rank_coeff;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "counterexample tables", counterexample_tables},
      {2, "counterexample rescue", counterexample_rescue},
      {3, "all-pairs certification", all_pairs_suite},
      {4, "single-flip exclusivity", single_flip_exclusivity},
      {5, "qudit reduction", qudit_reduction},
      {6, "Hadamard basis fix", hadamard_basis_fix},
      {7, "Gisin closure", gisin_closure},
      {8, "factorization converse", factorization_converse},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    std::printf("[%s] criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.str().c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed ? 1 : 0;
}
