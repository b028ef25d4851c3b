#ifndef DPRLNS_HRGCN_HPP_
#define DPRLNS_HRGCN_HPP_

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dprlns/embedding.hpp"
#include "dprlns/error.hpp"
#include "dprlns/instance.hpp"
#include "dprlns/linalg.hpp"
#include "dprlns/weights.hpp"

namespace dprlns {

/// Floor added to elu(x) + 1 so Beta parameters stay strictly positive.
inline constexpr double kBetaEpsilon = 1e-6;

template <typename Scalar>
struct GcnWeights {
  Matrix<Scalar> w_self;  // out x in
  Matrix<Scalar> w_nbr;   // out x in
  Vector<Scalar> bias;    // out

  Eigen::Index in_dim() const { return w_self.cols(); }
  Eigen::Index out_dim() const { return w_self.rows(); }
};

template <typename Scalar>
struct Linear {
  Matrix<Scalar> weight;  // out x in
  Vector<Scalar> bias;
};

/// GRU cell with torch.nn.GRUCell gate layout (reset, update, candidate).
template <typename Scalar>
struct GruWeights {
  Matrix<Scalar> w_ih;  // 3H x A
  Matrix<Scalar> w_hh;  // 3H x H
  Vector<Scalar> b_ih;
  Vector<Scalar> b_hh;
};

template <typename Scalar>
struct HrgcnWeights {
  Eigen::Index n_a = 0;
  Eigen::Index n_h = 0;
  std::size_t k = 0;
  GcnWeights<Scalar> gcn0, route1, route2, near, route_inv1, route_inv2;
  GruWeights<Scalar> gru;
  Linear<Scalar> gate, anchor_head, alpha_head, beta_head;

  static HrgcnWeights from_bundle(const WeightBundle& bundle);
};

/// Carried across LNS iterations; zero at the start of a run.
template <typename Scalar>
struct RecurrentState {
  Vector<Scalar> hidden;       // N_H
  Vector<Scalar> prev_anchor;  // N_A

  static RecurrentState zeros(Eigen::Index n_a, Eigen::Index n_h) {
    return {Vector<Scalar>::Zero(n_h), Vector<Scalar>::Zero(n_a)};
  }
};

/// Mean-aggregation operators of the three graphs.
template <typename Scalar>
struct GraphOperators {
  SparseMatrix<Scalar> knn;
  SparseMatrix<Scalar> route_fwd;
  SparseMatrix<Scalar> route_inv;

  static GraphOperators from_arcs(const GraphArcs& arcs) {
    return {mean_aggregator<Scalar>(arcs.knn, arcs.n_nodes),
            mean_aggregator<Scalar>(arcs.route_fwd, arcs.n_nodes),
            mean_aggregator<Scalar>(arcs.route_inv, arcs.n_nodes)};
  }
};

/// Intermediate activations, exposed for inspection.
template <typename Scalar>
struct HrgcnLayers {
  Matrix<Scalar> h0, h1, h2, h3, h4, h5;
  Vector<Scalar> gate;
};

template <typename Scalar>
struct HrgcnOutput {
  Vector<Scalar> anchor_probs;  // depot entry is exactly 0
  Vector<Scalar> alpha;
  Vector<Scalar> beta;
  Matrix<Scalar> node_features;  // gated final embeddings, one row per node
  Vector<Scalar> hidden;         // GRU output for this iteration

  /// State for the next iteration: this hidden vector plus the mean final
  /// embedding of the anchors that were actually sampled.
  RecurrentState<Scalar> next_state(std::span<const NodeId> anchors) const {
    RecurrentState<Scalar> s{hidden, Vector<Scalar>::Zero(node_features.cols())};
    for (NodeId a : anchors) s.prev_anchor += node_features.row(a).transpose();
    if (!anchors.empty()) s.prev_anchor /= static_cast<Scalar>(anchors.size());
    return s;
  }
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string("hrgcn: NaN/Inf in ") + what);
}

template <typename Scalar>
Vector<Scalar> sigmoid(const Vector<Scalar>& x) {
  return (Scalar(1) + (-x.array()).exp()).inverse().matrix();
}

template <typename Scalar, typename Derived>
auto elu(const Eigen::ArrayBase<Derived>& x) {
  return (x > Scalar(0)).select(x, x.exp() - Scalar(1));
}

template <typename Scalar>
Matrix<Scalar> reshape(const Tensor& t) {
  const Eigen::Index rows = t.shape[0];
  const Eigen::Index cols = t.shape.size() > 1 ? t.shape[1] : 1;
  return Eigen::Map<const Matrix<double>>(t.values.data(), rows, cols).template cast<Scalar>();
}

template <typename Scalar>
Vector<Scalar> as_vector(const Tensor& t) {
  return Eigen::Map<const Vector<double>>(t.values.data(), static_cast<Eigen::Index>(t.values.size()))
      .template cast<Scalar>();
}

}  // namespace detail

/// out_i = ReLU(W_self f_i + W_nbr mean_{j -> i} f_j + b); nodes without
/// in-arcs aggregate to zero.
template <typename Scalar, typename Derived>
Matrix<Scalar> gcn_layer(const Eigen::MatrixBase<Derived>& features,
                         const SparseMatrix<Scalar>& aggregator, const GcnWeights<Scalar>& w) {
  if (features.cols() != w.in_dim() || w.w_nbr.rows() != w.out_dim() ||
      w.w_nbr.cols() != w.in_dim() || w.bias.size() != w.out_dim()) {
    throw InvalidArgument("gcn_layer: weight shapes do not match the feature width");
  }
  if (aggregator.rows() != features.rows() || aggregator.cols() != features.rows()) {
    throw InvalidArgument("gcn_layer: aggregator does not match the node count");
  }
  const Matrix<Scalar> neighbours = aggregator * features;
  Matrix<Scalar> out = features * w.w_self.transpose() + neighbours * w.w_nbr.transpose();
  out.rowwise() += w.bias.transpose();
  return out.cwiseMax(Scalar(0));
}

template <typename Scalar, typename Derived>
Matrix<Scalar> gcn_layer(const Eigen::MatrixBase<Derived>& features, const std::vector<Arc>& arcs,
                         const GcnWeights<Scalar>& w) {
  return gcn_layer(features, mean_aggregator<Scalar>(arcs, static_cast<std::size_t>(features.rows())), w);
}

template <typename Scalar>
Vector<Scalar> gru_cell(const Vector<Scalar>& input, const Vector<Scalar>& hidden,
                        const GruWeights<Scalar>& w) {
  const Eigen::Index h = hidden.size();
  const Vector<Scalar> gi = w.w_ih * input + w.b_ih;
  const Vector<Scalar> gh = w.w_hh * hidden + w.b_hh;
  const Vector<Scalar> reset = detail::sigmoid<Scalar>(gi.segment(0, h) + gh.segment(0, h));
  const Vector<Scalar> update = detail::sigmoid<Scalar>(gi.segment(h, h) + gh.segment(h, h));
  const Vector<Scalar> candidate =
      (gi.segment(2 * h, h).array() + reset.array() * gh.segment(2 * h, h).array()).tanh().matrix();
  return ((Scalar(1) - update.array()) * candidate.array() + update.array() * hidden.array()).matrix();
}

/// Actor forward pass:
///   h0 = GCN_0(emb, knn)       h1 = GCN_route1(h0)         h2 = GCN_route2(h1) + h0
///   h3 = GCN_near(h2, knn)     h4 = GCN_route_inv1(h3)     h5 = GCN_route_inv2(h4) + h3
///   hidden' = GRU(prev_anchor, hidden), g = sigmoid(W_g hidden' + b_g), h6 = h5 * g
/// then a softmax anchor head over customers and elu(.) + 1 + eps Beta heads.
template <typename Scalar, typename Derived>
HrgcnOutput<Scalar> hrgcn_forward(const Eigen::MatrixBase<Derived>& embeddings,
                                  const GraphOperators<Scalar>& graphs,
                                  const RecurrentState<Scalar>& state,
                                  const HrgcnWeights<Scalar>& w,
                                  HrgcnLayers<Scalar>* layers = nullptr) {
  if (embeddings.cols() != kEmbeddingDim) throw InvalidArgument("hrgcn: embeddings need 10 columns");
  if (embeddings.rows() < 2) throw InvalidArgument("hrgcn: need a depot and a customer");
  if (state.hidden.size() != w.n_h || state.prev_anchor.size() != w.n_a) {
    throw InvalidArgument("hrgcn: recurrent state does not match the weight dimensions");
  }
  detail::require_finite(embeddings, "embeddings");
  detail::require_finite(state.hidden, "recurrent hidden state");
  detail::require_finite(state.prev_anchor, "previous anchor embedding");

  HrgcnLayers<Scalar> local;
  HrgcnLayers<Scalar>& l = layers ? *layers : local;
  l.h0 = gcn_layer(embeddings, graphs.knn, w.gcn0);
  l.h1 = gcn_layer(l.h0, graphs.route_fwd, w.route1);
  l.h2 = gcn_layer(l.h1, graphs.route_fwd, w.route2) + l.h0;
  l.h3 = gcn_layer(l.h2, graphs.knn, w.near);
  l.h4 = gcn_layer(l.h3, graphs.route_inv, w.route_inv1);
  l.h5 = gcn_layer(l.h4, graphs.route_inv, w.route_inv2) + l.h3;

  HrgcnOutput<Scalar> out;
  out.hidden = gru_cell(state.prev_anchor, state.hidden, w.gru);
  l.gate = detail::sigmoid<Scalar>(w.gate.weight * out.hidden + w.gate.bias);
  out.node_features = l.h5 * l.gate.asDiagonal();

  const Vector<Scalar> logits =
      (out.node_features * w.anchor_head.weight.transpose()).col(0).array() + w.anchor_head.bias(0);
  const Eigen::Index n = logits.size();
  const Scalar top = logits.tail(n - 1).maxCoeff();
  out.anchor_probs = Vector<Scalar>::Zero(n);
  out.anchor_probs.tail(n - 1) = (logits.tail(n - 1).array() - top).exp().matrix();
  out.anchor_probs /= out.anchor_probs.sum();

  const auto beta_param = [&](const Linear<Scalar>& head) {
    const auto raw = ((out.node_features * head.weight.transpose()).col(0).array() + head.bias(0)).eval();
    return (detail::elu<Scalar>(raw) + Scalar(1) + static_cast<Scalar>(kBetaEpsilon)).matrix().eval();
  };
  out.alpha = beta_param(w.alpha_head);
  out.beta = beta_param(w.beta_head);

  detail::require_finite(out.anchor_probs, "anchor probabilities");
  detail::require_finite(out.alpha, "alpha head");
  detail::require_finite(out.beta, "beta head");
  return out;
}

template <typename Scalar>
HrgcnWeights<Scalar> HrgcnWeights<Scalar>::from_bundle(const WeightBundle& bundle) {
  validate_bundle(bundle);
  using detail::as_vector;
  using detail::reshape;
  auto gcn = [&](const std::string& name) {
    return GcnWeights<Scalar>{reshape<Scalar>(bundle.at(name + ".w_self")),
                              reshape<Scalar>(bundle.at(name + ".w_nbr")),
                              as_vector<Scalar>(bundle.at(name + ".bias"))};
  };
  auto linear = [&](const std::string& name) {
    return Linear<Scalar>{reshape<Scalar>(bundle.at(name + ".weight")),
                          as_vector<Scalar>(bundle.at(name + ".bias"))};
  };
  HrgcnWeights w;
  w.n_a = bundle.n_a;
  w.n_h = bundle.n_h;
  w.k = bundle.k;
  w.gcn0 = gcn("gcn0");
  w.route1 = gcn("gcn_route1");
  w.route2 = gcn("gcn_route2");
  w.near = gcn("gcn_near");
  w.route_inv1 = gcn("gcn_route_inv1");
  w.route_inv2 = gcn("gcn_route_inv2");
  w.gru = GruWeights<Scalar>{reshape<Scalar>(bundle.at("gru.w_ih")), reshape<Scalar>(bundle.at("gru.w_hh")),
                             as_vector<Scalar>(bundle.at("gru.b_ih")), as_vector<Scalar>(bundle.at("gru.b_hh"))};
  w.gate = linear("gate");
  w.anchor_head = linear("anchor_head");
  w.alpha_head = linear("alpha_head");
  w.beta_head = linear("beta_head");
  return w;
}

}  // namespace dprlns

#endif  // DPRLNS_HRGCN_HPP_
