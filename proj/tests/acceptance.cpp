// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dprlns/destroy.hpp"
#include "dprlns/generator.hpp"
#include "dprlns/hrgcn.hpp"
#include "dprlns/instance_io.hpp"
#include "dprlns/repair.hpp"
#include "dprlns/search.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dprlns;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

// Shared by every criterion that runs the search: best-so-far must never rise.
std::size_t g_runs_checked = 0;
std::size_t g_runs_increasing = 0;

SearchResult tracked_run(const Instance& inst, const SearchConfig& cfg,
                         std::shared_ptr<const WeightBundle> bundle = nullptr) {
  auto res = lns_run(inst, cfg, std::move(bundle));
  ++g_runs_checked;
  for (std::size_t i = 1; i < res.trace.size(); ++i) {
    if (res.trace[i].best > res.trace[i - 1].best) {
      ++g_runs_increasing;
      break;
    }
  }
  return res;
}

Verdict scripted_replay() {
  Verdict v;
  const auto fig = fixtures::dpr_script();
  const auto out = dpr_destroy(fig.instance, fig.solution, DprRequest{{fig.a}, fig.coefficients, 12});
  std::vector<std::string> seen;
  for (const auto& s : out.steps) seen.push_back(s.skipped ? "skip" : std::to_string(s.removed.size()));
  std::string joined;
  for (const auto& s : seen) joined += (joined.empty() ? "" : ",") + s;
  v.require(seen == std::vector<std::string>{"6", "3", "skip", "3"}, "steps " + joined);
  v.require(out.steps.size() == 4 && out.steps[0].node == fig.a && out.steps[1].node == fig.b &&
                out.steps[2].node == fig.c && out.steps[3].node == fig.d,
            "anchor order");
  v.require(out.removed.size() == 12, "total " + std::to_string(out.removed.size()));
  if (v.ok) v.detail = "steps " + joined + ", total " + std::to_string(out.removed.size());
  return v;
}

Verdict repair_optimality() {
  Verdict v;
  std::mt19937_64 gen(1001);
  double worst = 0.0;
  int trials = 0;
  while (trials < 100) {
    const auto inst = oracle::planar_instance(gen, std::uniform_int_distribution<int>(2, 12)(gen));
    const auto s = fixtures::random_partial(inst, gen);
    if (s.pool.empty()) continue;
    ++trials;
    const NodeId c = s.pool[std::uniform_int_distribution<std::size_t>(0, s.pool.size() - 1)(gen)];
    const auto expected = oracle::exhaustive_insertion(inst, s, c);
    const auto got = best_insertion(inst, s, c);
    if (!expected) {
      v.require(false, "oracle found no placement");
      continue;
    }
    const double gap = std::abs(got.delta - expected->delta);
    worst = std::max(worst, gap);
    v.require(gap <= 1e-9, "delta gap " + std::to_string(gap));
    const bool same = expected->route < 0
                          ? got.new_route()
                          : (!got.new_route() && *got.route == static_cast<std::size_t>(expected->route) &&
                             got.position == expected->position);
    v.require(same, "placement differs on trial " + std::to_string(trials));
  }
  if (v.ok) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << trials << " trials, max |delta gap| " << worst;
    v.detail = s.str();
  }
  return v;
}

Verdict feasibility_oracle() {
  Verdict v;
  std::mt19937_64 gen(2002);
  int feasible = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = oracle::integer_line_instance(gen, std::uniform_int_distribution<int>(1, 10)(gen));
    const auto route = fixtures::random_route(inst, gen);
    const auto expected = oracle::tick_simulate(inst, route);
    const auto got = check_route(inst, route);
    if (expected.violation) {
      v.require(!is_feasible(got) && std::get<Violation>(got) == *expected.violation,
                "verdict mismatch on route " + std::to_string(trial));
    } else {
      v.require(is_feasible(got), "false violation on route " + std::to_string(trial));
      ++feasible;
    }
  }
  if (v.ok) v.detail = "1000 routes, " + std::to_string(feasible) + " feasible";
  return v;
}

Verdict destruction_rule() {
  Verdict v;
  v.require(degree_of_destruction(100, false) == 10, "N=100 single");
  v.require(degree_of_destruction(100, true) == 12, "N=100 multi");
  v.require(degree_of_destruction(25, false) == 5, "N=25 single");
  if (v.ok) v.detail = "100->10/12, 25->5";
  return v;
}

Verdict solver_quality() {
  Verdict v;
  struct Case {
    const char* file;
    double best_known;
  };
  const Case cases[] = {{"C101.txt", 191.3}, {"R101.txt", 617.1}, {"RC101.txt", 461.1}};
  double total_runtime = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const auto inst = load_instance(fixtures::data_path(std::string("solomon/") + c.file), 25);
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SearchConfig cfg;
      cfg.op = DestroyOperator::Rand;
      cfg.iterations = 150;
      cfg.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = tracked_run(inst, cfg);
      total_runtime += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      sum += res.best_cost;
    }
    const double ratio = sum / 10.0 / c.best_known;
    v.require(ratio <= 1.2, std::string(c.file) + " ratio " + fmt(ratio));
    detail += inst.name() + " " + fmt(ratio, 3) + "x ";
  }
  v.require(total_runtime < 5.0, "runtime " + fmt(total_runtime) + " s");
  if (v.ok) v.detail = detail + "of best-known, " + fmt(total_runtime, 2) + " s";
  return v;
}

Verdict operator_ordering() {
  Verdict v;
  constexpr std::size_t kInstances = 40;
  constexpr std::uint64_t kSeeds = 5;
  std::seed_seq master{std::uint64_t{2026}};
  std::vector<std::uint32_t> seeds(kInstances);
  master.generate(seeds.begin(), seeds.end());
  double rand_sum = 0.0;
  double dpr_sum = 0.0;
  bool shared_init = true;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto inst = generate_synthetic({25, 0.3, seeds[i]});
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
      SearchConfig cfg;
      cfg.seed = s;
      cfg.op = DestroyOperator::Rand;
      const auto r = tracked_run(inst, cfg);
      cfg.op = DestroyOperator::DprRandom;
      const auto d = tracked_run(inst, cfg);
      shared_init = shared_init && r.initial_cost == d.initial_cost;
      rand_sum += r.best_cost;
      dpr_sum += d.best_cost;
    }
  }
  const double n = static_cast<double>(kInstances * kSeeds);
  v.require(shared_init, "initial solutions differ between operators");
  v.require(dpr_sum <= rand_sum, "dpr_random " + fmt(dpr_sum / n) + " > rand " + fmt(rand_sum / n));
  if (v.ok) {
    v.detail = std::to_string(kInstances) + "x" + std::to_string(kSeeds) + " runs, dpr_random " +
               fmt(dpr_sum / n, 2) + " <= rand " + fmt(rand_sum / n, 2);
  }
  return v;
}

Verdict hrgcn_invariants() {
  Verdict v;
  std::mt19937_64 gen(3003);
  double worst_sum = 0.0;
  double worst_perm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto bundle = random_bundle(32, 16, 5, gen());
    const auto w = HrgcnWeights<double>::from_bundle(bundle);
    const auto inst = oracle::planar_instance(gen, std::uniform_int_distribution<int>(3, 30)(gen));
    Rng rng(gen());
    const auto sol = initial_solution(inst, rng);

    // Non-zero state so the GRU and gate paths are exercised.
    auto state = RecurrentState<double>::zeros(32, 16);
    state.hidden.setRandom();
    state.prev_anchor.setRandom();

    auto run = [&](const Instance& i, const Solution& s, const HrgcnWeights<double>& ww,
                   HrgcnLayers<double>* layers = nullptr) {
      const auto graphs = GraphOperators<double>::from_arcs(build_arcs(i, s, ww.k));
      return hrgcn_forward(build_embeddings(i, s), graphs, state, ww, layers);
    };
    const auto out = run(inst, sol, w);
    worst_sum = std::max(worst_sum, std::abs(out.anchor_probs.sum() - 1.0));
    v.require(out.anchor_probs(0) == 0.0, "depot mass");
    v.require((out.alpha.array() > 0.0).all() && (out.beta.array() > 0.0).all(), "alpha/beta positivity");

    const auto n = static_cast<NodeId>(inst.customer_count());
    std::vector<NodeId> perm(static_cast<std::size_t>(n) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), gen);
    std::vector<Node> nodes(perm.size());
    for (Node node : inst.nodes()) {
      node.id = perm[static_cast<std::size_t>(node.id)];
      nodes[static_cast<std::size_t>(node.id)] = node;
    }
    const Instance moved("perm", std::move(nodes), inst.capacity());
    Solution moved_sol = sol;
    for (auto& r : moved_sol.routes) {
      for (NodeId& c : r.customers) c = perm[static_cast<std::size_t>(c)];
    }
    const auto pout = run(moved, moved_sol, w);
    for (NodeId i = 0; i <= n; ++i) {
      const auto j = perm[static_cast<std::size_t>(i)];
      worst_perm = std::max({worst_perm, std::abs(out.anchor_probs(i) - pout.anchor_probs(j)),
                             std::abs(out.alpha(i) - pout.alpha(j)), std::abs(out.beta(i) - pout.beta(j))});
    }

    auto zeroed = w;
    for (auto* g : {&zeroed.route2, &zeroed.route_inv2}) {
      g->w_self.setZero();
      g->w_nbr.setZero();
      g->bias.setZero();
    }
    HrgcnLayers<double> layers;
    run(inst, sol, zeroed, &layers);
    v.require(layers.h2 == layers.h0 && layers.h5 == layers.h3, "residual identity");
  }
  v.require(worst_sum <= 1e-6, "softmax sum off by " + std::to_string(worst_sum));
  v.require(worst_perm <= 1e-6, "equivariance gap " + std::to_string(worst_perm));
  if (v.ok) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << "20 draws, |sum-1| " << worst_sum << ", perm gap " << worst_perm;
    v.detail = s.str();
  }
  return v;
}

Verdict sa_statistics() {
  Verdict v;
  Rng rng(4004);
  constexpr int kTrials = 100'000;
  int hits = 0;
  for (int i = 0; i < kTrials; ++i) hits += sa_accept(110.0, 100.0, 10.0, rng) ? 1 : 0;
  const double rate = hits / static_cast<double>(kTrials);
  v.require(std::abs(rate - std::exp(-1.0)) <= 0.02, "rate " + fmt(rate));
  v.require(g_runs_checked > 0, "no search runs recorded");
  v.require(g_runs_increasing == 0, std::to_string(g_runs_increasing) + " runs with a rising best");
  if (v.ok) {
    v.detail = "rate " + fmt(rate) + " vs " + fmt(std::exp(-1.0)) + "; best non-increasing on " +
               std::to_string(g_runs_checked) + " runs";
  }
  return v;
}

Verdict trace_contracts() {
  Verdict v;
  const auto inst = load_instance(fixtures::data_path("solomon/R101.txt"), 25);
  SearchConfig cfg;
  cfg.op = DestroyOperator::DprRandom;
  cfg.iterations = 1000;
  cfg.seed = 5;
  const auto res = tracked_run(inst, cfg);
  std::ostringstream csv;
  write_trace_csv(csv, res.trace);
  const auto text = csv.str();
  v.require(text.substr(0, text.find('\n')) == "iter,cost,best,accepted,temperature,mean_coeff,anchors",
            "trace header");
  double sum = 0.0;
  for (const auto& row : res.trace) sum += row.mean_coeff.value_or(-1.0);
  const double mean = sum / static_cast<double>(res.trace.size());
  v.require(res.trace.size() == 1000, "trace length");
  v.require(std::abs(mean - 0.5) <= 0.05, "mean coefficient " + fmt(mean));
  if (v.ok) v.detail = "header exact, mean coefficient " + fmt(mean) + " over 1000 iterations";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  // SA statistics runs last so it can audit every search run made before it.
  const std::vector<Criterion> criteria{
      {"dpr-scripted-replay", scripted_replay},
      {"repair-optimality", repair_optimality},
      {"feasibility-oracle", feasibility_oracle},
      {"degree-of-destruction", destruction_rule},
      {"solver-quality", solver_quality},
      {"operator-ordering", operator_ordering},
      {"hrgcn-invariants", hrgcn_invariants},
      {"trace-contracts", trace_contracts},
      {"sa-statistics", sa_statistics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.ok ? "PASS" : "FAIL", c.name, v.detail.c_str());
    failed += v.ok ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
