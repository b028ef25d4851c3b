#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dprlns/csv.hpp"
#include "dprlns/error.hpp"
#include "dprlns/instance_io.hpp"
#include "dprlns/search.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dprlns;

TEST_CASE("degree of destruction") {
  CHECK(degree_of_destruction(100, false) == 10);
  CHECK(degree_of_destruction(100, true) == 12);
  CHECK(degree_of_destruction(25, false) == 5);
  CHECK(degree_of_destruction(25, true) == 6);
  CHECK(degree_of_destruction(1, false) == 1);
  CHECK(degree_of_destruction(1, true) == 1);
  CHECK(degree_of_destruction(2, true) == 2);
}

TEST_CASE("Metropolis acceptance") {
  Rng rng(55);
  for (int i = 0; i < 100; ++i) {
    CHECK(sa_accept(9.0, 10.0, 1.0, rng));
    CHECK(sa_accept(10.0, 10.0, 1e-9, rng));
  }
  int hits = 0;
  constexpr int kTrials = 100'000;
  for (int i = 0; i < kTrials; ++i) hits += sa_accept(15.0, 10.0, 5.0, rng) ? 1 : 0;
  CHECK(std::abs(hits / double(kTrials) - std::exp(-1.0)) < 0.02);
}

TEST_CASE("geometric temperature schedule") {
  CHECK(temperature_at(0, 150, 100.0, 1.0) == doctest::Approx(100.0));
  CHECK(temperature_at(149, 150, 100.0, 1.0) == doctest::Approx(1.0));
  CHECK(temperature_at(0, 1, 100.0, 1.0) == 100.0);
  for (std::size_t k = 1; k < 150; ++k) {
    const double ratio = temperature_at(k, 150, 100.0, 1.0) / temperature_at(k - 1, 150, 100.0, 1.0);
    CHECK(ratio == doctest::Approx(std::pow(0.01, 1.0 / 149.0)));
  }
}

TEST_CASE("operator names") {
  for (auto op : {DestroyOperator::Rand, DestroyOperator::AlnsLite, DestroyOperator::String,
                  DestroyOperator::DprRandom, DestroyOperator::DprNeural}) {
    CHECK(parse_operator(to_string(op)) == op);
  }
  CHECK(parse_operator("alns") == DestroyOperator::AlnsLite);
  CHECK_THROWS_AS(parse_operator("bogus"), InvalidArgument);
}

TEST_CASE("config validation") {
  SearchConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.iterations = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.t_final = 200.0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.n_anchors = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("every iteration leaves a complete feasible solution") {
  const auto inst = load_instance(fixtures::data_path("solomon/RC101.txt"), 25);
  const auto bundle = std::make_shared<const WeightBundle>(random_bundle(16, 16, 5, 1));
  for (auto op : {DestroyOperator::Rand, DestroyOperator::AlnsLite, DestroyOperator::String,
                  DestroyOperator::DprRandom, DestroyOperator::DprNeural}) {
    CAPTURE(to_string(op));
    SearchConfig cfg;
    cfg.iterations = 40;
    cfg.op = op;
    cfg.seed = 3;
    std::size_t seen = 0;
    double prev_best = std::numeric_limits<double>::infinity();
    const auto res = lns_run(inst, cfg, bundle, [&](const TraceRow& row, const Solution& s) {
      CHECK(row.iter == seen++);
      CHECK(s.complete());
      validate_partition(inst, s);
      for (const auto& r : s.routes) CHECK(route_feasible(inst, r.customers));
      CHECK(solution_cost(inst, s) == doctest::Approx(row.cost));
      CHECK(row.best <= prev_best);
      CHECK(row.best <= row.cost + 1e-9);
      prev_best = row.best;
    });
    CHECK(seen == 40);
    CHECK(res.trace.size() == 40);
    CHECK(res.best_cost == doctest::Approx(solution_cost(inst, res.best)));
    CHECK(res.best_cost <= res.initial_cost);
    const bool dpr = op == DestroyOperator::DprRandom || op == DestroyOperator::DprNeural;
    for (const auto& row : res.trace) {
      CHECK(row.mean_coeff.has_value() == dpr);
      CHECK(row.anchors.size() == (op == DestroyOperator::DprNeural ? 2u : dpr ? 1u : 0u));
    }
    CHECK(res.policy_steps == (op == DestroyOperator::DprNeural ? 40u : 0u));
  }
}

TEST_CASE("runs are reproducible and share the initial solution") {
  const auto inst = load_instance(fixtures::data_path("solomon/C101.txt"), 25);
  SearchConfig cfg;
  cfg.iterations = 30;
  cfg.seed = 9;
  cfg.op = DestroyOperator::DprRandom;
  const auto a = lns_run(inst, cfg);
  const auto b = lns_run(inst, cfg);
  CHECK(a.best == b.best);
  CHECK(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].cost == b.trace[i].cost);

  cfg.op = DestroyOperator::Rand;
  CHECK(lns_run(inst, cfg).initial_cost == a.initial_cost);
  cfg.seed = 10;
  CHECK(lns_run(inst, cfg).trace.size() == 30);
}

TEST_CASE("dpr_neural needs a bundle") {
  const auto inst = load_instance(fixtures::data_path("solomon/C101.txt"), 10);
  SearchConfig cfg;
  cfg.op = DestroyOperator::DprNeural;
  CHECK_THROWS_AS(lns_run(inst, cfg), InvalidArgument);
  cfg.iterations = 3;
  const auto wide = std::make_shared<const WeightBundle>(random_bundle(130, 8, 4, 2));
  const auto res = lns_run(inst, cfg, wide);
  CHECK(res.trace[0].anchors.size() == 3);
}

TEST_CASE("trace CSV") {
  const auto inst = load_instance(fixtures::data_path("solomon/R101.txt"), 10);
  SearchConfig cfg;
  cfg.iterations = 5;
  cfg.op = DestroyOperator::DprRandom;
  const auto res = lns_run(inst, cfg);
  std::ostringstream out;
  write_trace_csv(out, res.trace);
  const auto text = out.str();
  CHECK(text.substr(0, text.find('\n')) == kTraceHeader);
  const auto table = parse_csv(text);
  REQUIRE(table.size() == 6);
  for (std::size_t i = 1; i < table.size(); ++i) {
    CHECK(table[i].size() == 7);
    CHECK(std::stod(table[i][1]) == res.trace[i - 1].cost);
    CHECK(std::stoul(table[i][6]) == static_cast<unsigned long>(res.trace[i - 1].anchors[0]));
  }
}
