#include <doctest.h>

#include <filesystem>
#include <random>

#include "dprlns/error.hpp"
#include "dprlns/hrgcn.hpp"
#include "dprlns/search.hpp"
#include "oracles.hpp"

using namespace dprlns;

namespace {

struct Scene {
  Instance instance;
  Solution solution;
};

Scene scene(std::uint64_t seed, int n = 12) {
  std::mt19937_64 gen(seed);
  auto inst = oracle::planar_instance(gen, n);
  Rng rng(seed);
  auto sol = initial_solution(inst, rng);
  return {std::move(inst), std::move(sol)};
}

GcnWeights<double> random_gcn(std::mt19937_64& gen, Eigen::Index in, Eigen::Index out) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto fill = [&](Eigen::Index r, Eigen::Index c) {
    return Matrix<double>(Matrix<double>::NullaryExpr(r, c, [&] { return u(gen); }));
  };
  return {fill(out, in), fill(out, in), Vector<double>::NullaryExpr(out, [&] { return u(gen); })};
}

HrgcnOutput<double> forward(const Scene& s, const HrgcnWeights<double>& w, const RecurrentState<double>& state,
                            HrgcnLayers<double>* layers = nullptr) {
  const auto emb = build_embeddings(s.instance, s.solution);
  const auto graphs = GraphOperators<double>::from_arcs(build_arcs(s.instance, s.solution, w.k));
  return hrgcn_forward(emb, graphs, state, w, layers);
}

void zero(GcnWeights<double>& g) {
  g.w_self.setZero();
  g.w_nbr.setZero();
  g.bias.setZero();
}

}  // namespace

TEST_CASE("gcn_layer matches an explicit-loop reference") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = scene(gen(), 15);
    const auto arcs = build_arcs(s.instance, s.solution, 5);
    const Eigen::MatrixXd f = build_embeddings(s.instance, s.solution);
    const auto w = random_gcn(gen, kEmbeddingDim, 7);
    for (const auto* graph : {&arcs.knn, &arcs.route_fwd, &arcs.route_inv}) {
      const Eigen::MatrixXd got = gcn_layer(f, *graph, w);
      const Eigen::MatrixXd expected = oracle::dense_gcn(f, *graph, w.w_self, w.w_nbr, w.bias);
      CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("gcn_layer with zero weights outputs ReLU(bias)") {
  std::mt19937_64 gen(2);
  const auto s = scene(1);
  const auto arcs = build_arcs(s.instance, s.solution, 3);
  auto w = random_gcn(gen, kEmbeddingDim, 4);
  w.w_self.setZero();
  w.w_nbr.setZero();
  w.bias << 0.5, -1.0, 0.0, 2.0;
  const Eigen::MatrixXd out = gcn_layer(build_embeddings(s.instance, s.solution), arcs.knn, w);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    CHECK(out(i, 0) == 0.5);
    CHECK(out(i, 1) == 0.0);
    CHECK(out(i, 2) == 0.0);
    CHECK(out(i, 3) == 2.0);
  }
  auto bad = w;
  bad.bias.resize(3);
  CHECK_THROWS_AS(gcn_layer(build_embeddings(s.instance, s.solution), arcs.knn, bad), InvalidArgument);
}

TEST_CASE("forward pass output contract") {
  const auto bundle = random_bundle(32, 16, 5, 3);
  const auto w = HrgcnWeights<double>::from_bundle(bundle);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = scene(seed, 3 + static_cast<int>(seed));
    const auto out = forward(s, w, RecurrentState<double>::zeros(32, 16));
    CHECK(out.anchor_probs(0) == 0.0);
    CHECK(out.anchor_probs.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((out.anchor_probs.array() >= 0.0).all());
    CHECK((out.alpha.array() > 0.0).all());
    CHECK((out.beta.array() > 0.0).all());
    CHECK(out.node_features.rows() == static_cast<Eigen::Index>(s.instance.node_count()));
    CHECK(out.hidden.size() == 16);
  }
}

TEST_CASE("Beta heads stay positive for very negative pre-activations") {
  auto w = HrgcnWeights<double>::from_bundle(random_bundle(8, 8, 3, 4));
  w.alpha_head.weight.setZero();
  w.alpha_head.bias(0) = -1e4;
  const auto out = forward(scene(2), w, RecurrentState<double>::zeros(8, 8));
  CHECK((out.alpha.array() >= kBetaEpsilon * 0.5).all());
  CHECK(out.alpha(1) == doctest::Approx(kBetaEpsilon));
}

TEST_CASE("forward pass is permutation-equivariant over customers") {
  const auto w = HrgcnWeights<double>::from_bundle(random_bundle(24, 12, 4, 8));
  std::mt19937_64 gen(40);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = scene(gen(), 14);
    const auto n = static_cast<NodeId>(s.instance.customer_count());
    std::vector<NodeId> perm(static_cast<std::size_t>(n) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), gen);

    std::vector<Node> nodes(perm.size());
    for (const Node& node : s.instance.nodes()) {
      Node moved = node;
      moved.id = perm[static_cast<std::size_t>(node.id)];
      nodes[static_cast<std::size_t>(moved.id)] = moved;
    }
    Scene p{Instance("perm", std::move(nodes), s.instance.capacity()), s.solution};
    for (auto& r : p.solution.routes) {
      for (NodeId& c : r.customers) c = perm[static_cast<std::size_t>(c)];
    }

    const auto state = RecurrentState<double>::zeros(24, 12);
    const auto a = forward(s, w, state);
    const auto b = forward(p, w, state);
    for (NodeId i = 0; i <= n; ++i) {
      const auto j = perm[static_cast<std::size_t>(i)];
      CHECK(std::abs(a.anchor_probs(i) - b.anchor_probs(j)) < 1e-6);
      CHECK(std::abs(a.alpha(i) - b.alpha(j)) < 1e-6);
      CHECK(std::abs(a.beta(i) - b.beta(j)) < 1e-6);
    }
  }
}

TEST_CASE("zeroed route layers reduce the residual blocks to identity") {
  auto w = HrgcnWeights<double>::from_bundle(random_bundle(16, 8, 4, 5));
  zero(w.route2);
  zero(w.route_inv2);
  HrgcnLayers<double> layers;
  forward(scene(3), w, RecurrentState<double>::zeros(16, 8), &layers);
  CHECK(layers.h2 == layers.h0);
  CHECK(layers.h5 == layers.h3);
}

TEST_CASE("gru_cell follows the reset/update/candidate layout") {
  GruWeights<double> g{Matrix<double>::Zero(3, 1), Matrix<double>::Zero(3, 1), Vector<double>::Zero(3),
                       Vector<double>::Zero(3)};
  // Update gate saturated open: the hidden state passes through.
  g.b_ih(1) = 50.0;
  Vector<double> h(1);
  h << 0.3;
  Vector<double> x(1);
  x << 1.0;
  CHECK(gru_cell(x, h, g)(0) == doctest::Approx(0.3));
  // Update gate shut, candidate driven by the input only.
  g.b_ih(1) = -50.0;
  g.w_ih(2, 0) = 0.5;
  CHECK(gru_cell(x, h, g)(0) == doctest::Approx(std::tanh(0.5)));
  // Reset gate scales the hidden contribution to the candidate.
  g.w_hh(2, 0) = 1.0;
  g.b_ih(0) = -50.0;
  CHECK(gru_cell(x, h, g)(0) == doctest::Approx(std::tanh(0.5)));
  g.b_ih(0) = 50.0;
  CHECK(gru_cell(x, h, g)(0) == doctest::Approx(std::tanh(0.8)));
}

TEST_CASE("forward pass is deterministic and float-compatible") {
  const auto bundle = random_bundle(16, 8, 4, 6);
  const auto w = HrgcnWeights<double>::from_bundle(bundle);
  const auto s = scene(4);
  const auto state = RecurrentState<double>::zeros(16, 8);
  const auto a = forward(s, w, state);
  const auto b = forward(s, w, state);
  CHECK(a.anchor_probs == b.anchor_probs);
  CHECK(a.alpha == b.alpha);

  const auto wf = HrgcnWeights<float>::from_bundle(bundle);
  const auto emb = build_embeddings<float>(s.instance, s.solution);
  const auto graphs = GraphOperators<float>::from_arcs(build_arcs(s.instance, s.solution, 4));
  const auto f = hrgcn_forward(emb, graphs, RecurrentState<float>::zeros(16, 8), wf);
  CHECK((f.anchor_probs.cast<double>() - a.anchor_probs).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("forward pass rejects bad inputs") {
  const auto w = HrgcnWeights<double>::from_bundle(random_bundle(16, 8, 4, 6));
  const auto s = scene(5);
  const auto graphs = GraphOperators<double>::from_arcs(build_arcs(s.instance, s.solution, 4));
  Matrix<double> emb = build_embeddings(s.instance, s.solution);
  CHECK_THROWS_AS(hrgcn_forward(emb, graphs, RecurrentState<double>::zeros(8, 8), w), InvalidArgument);
  emb(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hrgcn_forward(emb, graphs, RecurrentState<double>::zeros(16, 8), w), Error);
}

TEST_CASE("weight bundle serialisation") {
  const auto bundle = random_bundle(12, 6, 3, 9);
  CHECK_NOTHROW(validate_bundle(bundle));
  const auto text = serialize_bundle(bundle);
  CHECK(text.find(kWeightsFormat) != std::string::npos);
  const auto back = parse_bundle(text);
  CHECK(back == bundle);

  const auto path = std::filesystem::temp_directory_path() / "dprlns_test_bundle.json";
  save_bundle(bundle, path);
  CHECK(load_bundle(path) == bundle);
  std::filesystem::remove(path);

  CHECK(random_bundle(12, 6, 3, 9) == bundle);
  CHECK_FALSE(random_bundle(12, 6, 3, 10) == bundle);
  CHECK(bundle_layout(12, 6).size() == bundle.tensors.size());
}

TEST_CASE("weight bundle validation") {
  const auto good = random_bundle(8, 4, 3, 1);
  SUBCASE("wrong shape") {
    auto b = good;
    b.tensors["gru.w_ih"].shape = {12, 7};
    b.tensors["gru.w_ih"].values.resize(84);
    CHECK_THROWS_AS(validate_bundle(b), InvalidArgument);
  }
  SUBCASE("missing tensor") {
    auto b = good;
    b.tensors.erase("gate.bias");
    CHECK_THROWS_AS(validate_bundle(b), InvalidArgument);
  }
  SUBCASE("unexpected tensor") {
    auto b = good;
    b.tensors["extra"] = Tensor{{1}, {0.0}};
    CHECK_THROWS_AS(validate_bundle(b), InvalidArgument);
  }
  SUBCASE("non-finite value") {
    auto b = good;
    b.tensors["gcn0.bias"].values[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_bundle(b), InvalidArgument);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(parse_bundle("{\"format\": \"nope\"}\n"), ParseError);
  }
}
