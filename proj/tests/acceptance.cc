// Copyright 2026 The inkspan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inkspan/constant_factor.hpp"
#include "inkspan/exact.hpp"
#include "inkspan/generators.hpp"
#include "inkspan/ptas.hpp"
#include "inkspan/relaxation.hpp"
#include "inkspan/split.hpp"

namespace inkspan {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool AtLeast(double got, double bound, double rel) { return got >= bound - rel * std::max(1.0, std::abs(bound)); }

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Instance Worked(int T, std::vector<double> caps) {
  return validate_instance({{"i1", "i2"}, {3, 2}, {2, 2}, T, std::move(caps), {}});
}

// Seeded corpus: sizes, horizons and fill factors drawn from a fixed stream.
std::vector<Instance> RandomCorpus(std::size_t count, int max_items, int max_horizon, std::uint64_t stream) {
  std::mt19937_64 meta(stream);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomInstanceSpec spec;
    spec.items = static_cast<std::size_t>(detail::uniform_int(meta, 1, max_items));
    spec.horizon = static_cast<int>(detail::uniform_int(meta, 1, max_horizon));
    spec.fill_factor = static_cast<double>(detail::uniform_int(meta, 2, 9)) / 10.0;
    spec.seed = stream * 1000 + i;
    out.push_back(gen_random(spec));
  }
  return out;
}

struct Sweep {
  std::size_t schedules = 0;
  std::size_t infeasible = 0;
  void check(const Instance& inst, const Schedule& s) {
    ++schedules;
    if (!check_feasible(inst, s).feasible) ++infeasible;
  }
};

struct Shared {
  std::vector<Instance> cf_corpus;
  std::vector<ConstantFactorRun> cf_runs;
  std::vector<double> cf_opt;
  std::vector<Instance> ptas_corpus;
  std::vector<std::vector<PtasRun>> ptas_runs;  // per epsilon
  std::vector<double> ptas_opt;
  Sweep sweep;
};

const std::vector<double> kEpsilons{0.3, 0.5};

Outcome ConstantFactorGuarantee(Shared& s) {
  s.cf_corpus = RandomCorpus(200, 8, 4, 1);
  s.cf_corpus.push_back(Worked(2, {2, 4}));
  s.cf_corpus.push_back(Worked(3, {2, 4, 4}));
  s.cf_corpus.push_back(gen_gap_family(2, 2));
  s.cf_corpus.push_back(gen_gap_family(3, 2));
  Outcome o;
  double worst = INFINITY;
  std::size_t bad = 0;
  for (const Instance& inst : s.cf_corpus) {
    const AlgoResult opt = brute_force(inst);
    s.sweep.check(inst, opt.schedule);
    ConstantFactorRun run = solve_constant_factor_traced(inst);
    s.sweep.check(inst, run.result.schedule);
    for (const auto& c : run.candidates) s.sweep.check(inst, c.schedule);
    for (const auto& d : run.disjuncts) s.sweep.check(inst, d.stage.x_breve);
    const double factor = guarantee_factor(inst);
    if (opt.value > 0) worst = std::min(worst, run.result.value / opt.value / factor);
    if (!AtLeast(run.result.value, factor * opt.value, 1e-6) || *run.result.claimed_factor != factor) ++bad;
    s.cf_opt.push_back(opt.value);
    s.cf_runs.push_back(std::move(run));
  }
  o.pass = bad == 0;
  o.detail = Fmt("%zu instances, %zu below bound, min value/(factor*OPT) = %.4f", s.cf_corpus.size(), bad, worst);
  return o;
}

Outcome PtasGuarantee(Shared& s) {
  s.ptas_corpus = RandomCorpus(100, 8, 3, 2);
  Outcome o;
  std::size_t bad = 0;
  double worst = INFINITY;
  for (const Instance& inst : s.ptas_corpus) {
    const AlgoResult opt = brute_force(inst);
    s.ptas_opt.push_back(opt.value);
  }
  for (double eps : kEpsilons) {
    std::vector<PtasRun> runs;
    for (std::size_t i = 0; i < s.ptas_corpus.size(); ++i) {
      const Instance& inst = s.ptas_corpus[i];
      PtasRun run = solve_ptas_traced(inst, eps, {.keep_traces = true});
      s.sweep.check(inst, run.result.schedule);
      const double bound = (1 - eps) * (1 - eps) * s.ptas_opt[i];
      if (!AtLeast(run.result.value, bound, 1e-6)) ++bad;
      if (s.ptas_opt[i] > 0) worst = std::min(worst, run.result.value / s.ptas_opt[i]);
      runs.push_back(std::move(run));
    }
    s.ptas_runs.push_back(std::move(runs));
  }
  o.pass = bad == 0;
  o.detail = Fmt("%zu instances x eps {0.3, 0.5}, %zu below (1-eps)^2 OPT, min ratio %.4f", s.ptas_corpus.size(),
                 bad, worst);
  return o;
}

Outcome SingleItemGap(Shared& s) {
  Outcome o;
  std::ostringstream d;
  for (int T = 2; T <= 6; ++T) {
    InstanceData data{{"x"}, {static_cast<double>(T)}, {static_cast<double>(T)}, T, {}, {}};
    for (int t = 1; t <= T; ++t) data.capacities.push_back(t);
    const Instance inst = validate_instance(std::move(data));
    const double lp = relaxation_value(inst, false);
    const AlgoResult ip = brute_force(inst);
    s.sweep.check(inst, ip.schedule);
    const bool ok = std::abs(lp - T * (T + 1) / 2.0) <= 1e-6 && std::abs(ip.value - T) <= 1e-6;
    o.pass = o.pass && ok;
    d << "T=" << T << " lp=" << lp << " ip=" << ip.value << (ok ? "" : " (mismatch)") << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome GapFamily(Shared& s) {
  Outcome o;
  std::ostringstream d;
  for (auto [k, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
    const Instance inst = gen_gap_family(k, m);
    const double T = inst.horizon();
    const double expected = T * (k - 1) * m + T;
    const GapReport r = gap_report(inst);
    s.sweep.check(inst, brute_force(inst).schedule);
    const bool ok = std::abs(r.lp_value - expected) <= 1e-6;
    o.pass = o.pass && ok;
    d << "(" << k << "," << m << ") lp=" << r.lp_value << " expected=" << expected << " ip=" << r.ip_value
      << " ratio=" << r.ratio << "; ";
  }
  o.pass = o.pass && gap_report(gen_gap_family(2, 2)).ip_value == 8.0;
  o.detail = d.str();
  return o;
}

Outcome OneFractionalPerPeriod(Shared& s) {
  std::size_t solves = 0, multi = 0, decreased = 0;
  for (std::size_t i = 0; i < s.cf_runs.size(); ++i) {
    const Instance& inst = s.cf_corpus[i];
    for (const auto& d : s.cf_runs[i].disjuncts) {
      ++solves;
      if (max_fractional_per_period(d.stage.x_tilde, inst.item_count(), inst.horizon()) > 1) ++multi;
      if (d.stage.stage_two_objective < d.stage.lp_objective - 1e-9) ++decreased;
    }
  }
  return {multi == 0 && decreased == 0,
          Fmt("%zu stage-two solves, %zu with >1 fractional entry in a period, %zu objective decreases", solves, multi,
              decreased)};
}

Outcome RoundDownBound(Shared& s) {
  std::size_t solves = 0, bad = 0, bad_vstar = 0;
  for (const auto& run : s.cf_runs) {
    for (const auto& d : run.disjuncts) {
      ++solves;
      if (!AtLeast(d.rounded_value, d.round_down_factor * d.stage.stage_two_objective, 1e-6)) ++bad;
      if (!AtLeast(d.rounded_value, d.round_down_factor * d.stage.v_star, 1e-6)) ++bad_vstar;
    }
  }
  return {bad == 0, Fmt("%zu disjuncts, %zu below the stage-two bound (%zu below the V* form)", solves, bad, bad_vstar)};
}

Outcome RoundingBlocks(Shared& s) {
  std::size_t qs = 0, class_bad = 0, tail_bad = 0;
  for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
    const double eps = kEpsilons[e];
    for (std::size_t i = 0; i < s.ptas_corpus.size(); ++i) {
      const Instance& inst = s.ptas_corpus[i];
      for (const QTrace& q : s.ptas_runs[e][i].traces) {
        ++qs;
        for (std::size_t k = 0; k < q.class_lp.size(); ++k) {
          if (!AtLeast(q.class_assembled[k], (1 - eps) * q.class_lp[k], 1e-6)) ++class_bad;
        }
        const double vh = inst.value(q.h);
        if (q.tail_lp - q.tail_assembled > eps * vh + 1e-6 * std::max(1.0, vh)) ++tail_bad;
      }
    }
  }
  return {class_bad == 0 && tail_bad == 0,
          Fmt("%zu solved LPs, %zu class blocks below (1-eps), %zu tails losing more than eps*v_h", qs, class_bad,
              tail_bad)};
}

Outcome SigmaCount(Shared&) {
  std::mt19937_64 rng(6);
  std::size_t checked = 0, bad = 0;
  while (checked < 20) {
    const int K = static_cast<int>(detail::uniform_int(rng, 1, 4));
    const int T = static_cast<int>(detail::uniform_int(rng, 1, 4));
    const int J = static_cast<int>(detail::uniform_int(rng, 1, 4));
    const std::size_t N = static_cast<std::size_t>(detail::uniform_int(rng, 1, 8));
    std::vector<std::size_t> sizes(K);
    std::vector<int> maxima(K);
    for (int k = 0; k < K; ++k) {
      sizes[k] = static_cast<std::size_t>(detail::uniform_int(rng, 0, 6));
      maxima[k] = std::min<int>(J, static_cast<int>(sizes[k]));
    }
    const std::uint64_t expected = count_lps(N, T, J, sizes);
    if (expected / N > 100000) continue;
    std::uint64_t streamed = 0;
    for_each_sigma(T, maxima, [&](const SigmaVector&) {
      ++streamed;
      return true;
    });
    if (streamed * N != expected) ++bad;
    ++checked;
  }
  return {bad == 0, Fmt("%zu configurations, %zu mismatches", checked, bad)};
}

Outcome Reduction(Shared& s) {
  const auto yes = gen_3partition({10, 11, 11, 10, 10, 12});
  const auto no = gen_3partition({10, 10, 10, 10, 10, 14});
  const AlgoResult y = brute_force(yes.instance);
  const AlgoResult n = brute_force(no.instance);
  s.sweep.check(yes.instance, y.schedule);
  s.sweep.check(no.instance, n.schedule);
  return {yes.target == 96 && no.target == 96 && y.value >= 96 && n.value < 96,
          Fmt("yes: %.0f (target %.0f), no: %.0f", y.value, yes.target, n.value)};
}

Outcome FeasibilitySweep(Shared& s) {
  return {s.sweep.infeasible == 0 && s.sweep.schedules > 0,
          Fmt("%zu schedules, %zu infeasible", s.sweep.schedules, s.sweep.infeasible)};
}

}  // namespace
}  // namespace inkspan

int main() {
  using namespace inkspan;
  Shared shared;
  const std::vector<std::pair<const char*, std::function<Outcome(Shared&)>>> criteria{
      {"constant-factor value >= guarantee factor * OPT", ConstantFactorGuarantee},
      {"PTAS value >= (1-eps)^2 * OPT", PtasGuarantee},
      {"single-item gap: weak LP = T(T+1)/2, IP = T", SingleItemGap},
      {"gap family: strengthened LP closed form", GapFamily},
      {"at most one fractional entry per period after exchange", OneFractionalPerPeriod},
      {"round-down bound against the stage-two objective", RoundDownBound},
      {"class and tail rounding losses", RoundingBlocks},
      {"sigma stream length = exact LP count", SigmaCount},
      {"3-partition reduction yes/no", Reduction},
      {"feasibility sweep", FeasibilitySweep},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second(shared);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
