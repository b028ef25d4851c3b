#include "dprlns/weights.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dprlns/embedding.hpp"
#include "dprlns/error.hpp"

namespace dprlns {

using json = nlohmann::json;

const Tensor& WeightBundle::at(const std::string& name) const {
  auto it = tensors.find(name);
  if (it == tensors.end()) throw InvalidArgument("weight bundle has no tensor '" + name + "'");
  return it->second;
}

std::vector<std::pair<std::string, std::vector<Eigen::Index>>> bundle_layout(Eigen::Index n_a,
                                                                             Eigen::Index n_h) {
  std::vector<std::pair<std::string, std::vector<Eigen::Index>>> layout;
  auto gcn = [&](const std::string& name, Eigen::Index in) {
    layout.push_back({name + ".w_self", {n_a, in}});
    layout.push_back({name + ".w_nbr", {n_a, in}});
    layout.push_back({name + ".bias", {n_a}});
  };
  gcn("gcn0", kEmbeddingDim);
  gcn("gcn_route1", n_a);
  gcn("gcn_route2", n_a);
  gcn("gcn_near", n_a);
  gcn("gcn_route_inv1", n_a);
  gcn("gcn_route_inv2", n_a);
  layout.push_back({"gru.w_ih", {3 * n_h, n_a}});
  layout.push_back({"gru.w_hh", {3 * n_h, n_h}});
  layout.push_back({"gru.b_ih", {3 * n_h}});
  layout.push_back({"gru.b_hh", {3 * n_h}});
  layout.push_back({"gate.weight", {n_a, n_h}});
  layout.push_back({"gate.bias", {n_a}});
  for (const char* head : {"anchor_head", "alpha_head", "beta_head"}) {
    layout.push_back({std::string(head) + ".weight", {1, n_a}});
    layout.push_back({std::string(head) + ".bias", {1}});
  }
  return layout;
}

namespace {

Eigen::Index element_count(const std::vector<Eigen::Index>& shape) {
  Eigen::Index n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_string(const std::vector<Eigen::Index>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
  return s + "]";
}

}  // namespace

void validate_bundle(const WeightBundle& bundle) {
  if (bundle.n_a < 1 || bundle.n_h < 1 || bundle.k < 1) {
    throw InvalidArgument("weight bundle: n_a, n_h and k must be positive");
  }
  const auto layout = bundle_layout(bundle.n_a, bundle.n_h);
  std::set<std::string> expected;
  for (const auto& [name, shape] : layout) {
    expected.insert(name);
    const Tensor& t = bundle.at(name);
    if (t.shape != shape) {
      throw InvalidArgument("weight bundle: '" + name + "' has shape " + shape_string(t.shape) +
                            ", expected " + shape_string(shape));
    }
    if (static_cast<Eigen::Index>(t.values.size()) != element_count(shape)) {
      throw InvalidArgument("weight bundle: '" + name + "' value count does not match its shape");
    }
    for (double v : t.values) {
      if (!std::isfinite(v)) throw InvalidArgument("weight bundle: '" + name + "' holds NaN/Inf");
    }
  }
  for (const auto& [name, t] : bundle.tensors) {
    if (!expected.count(name)) throw InvalidArgument("weight bundle: unexpected tensor '" + name + "'");
  }
}

std::string serialize_bundle(const WeightBundle& bundle) {
  validate_bundle(bundle);
  std::ostringstream out;
  const json meta = {{"n_a", bundle.n_a}, {"n_h", bundle.n_h}, {"k", bundle.k}, {"version", bundle.version}};
  out << "{\n\"format\": " << json(kWeightsFormat).dump() << ",\n\"meta\": " << meta.dump()
      << ",\n\"tensors\": [\n";
  const auto layout = bundle_layout(bundle.n_a, bundle.n_h);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& name = layout[i].first;
    const Tensor& t = bundle.at(name);
    const json entry = {{"name", name}, {"shape", t.shape}, {"values", t.values}};
    out << entry.dump() << (i + 1 < layout.size() ? ",\n" : "\n");
  }
  out << "]\n}\n";
  return out.str();
}

WeightBundle parse_bundle(const std::string& text) {
  WeightBundle bundle;
  try {
    const json doc = json::parse(text);
    const auto format = doc.at("format").get<std::string>();
    if (format != kWeightsFormat) throw ParseError(0, "unsupported weight format '" + format + "'");
    const auto& meta = doc.at("meta");
    bundle.n_a = meta.at("n_a").get<Eigen::Index>();
    bundle.n_h = meta.at("n_h").get<Eigen::Index>();
    bundle.k = meta.at("k").get<std::size_t>();
    bundle.version = meta.at("version").get<int>();
    for (const auto& entry : doc.at("tensors")) {
      const auto name = entry.at("name").get<std::string>();
      Tensor t{entry.at("shape").get<std::vector<Eigen::Index>>(),
               entry.at("values").get<std::vector<double>>()};
      if (!bundle.tensors.emplace(name, std::move(t)).second) {
        throw ParseError(0, "duplicate tensor '" + name + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  validate_bundle(bundle);
  return bundle;
}

WeightBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open weight bundle " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_bundle(buf.str());
}

void save_bundle(const WeightBundle& bundle, const std::filesystem::path& path) {
  const std::string text = serialize_bundle(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write weight bundle " + path.string());
  out << text;
}

WeightBundle random_bundle(Eigen::Index n_a, Eigen::Index n_h, std::size_t k, std::uint64_t seed) {
  WeightBundle bundle;
  bundle.n_a = n_a;
  bundle.n_h = n_h;
  bundle.k = k;
  std::mt19937_64 rng(seed);
  for (const auto& [name, shape] : bundle_layout(n_a, n_h)) {
    Tensor t{shape, std::vector<double>(static_cast<std::size_t>(element_count(shape)), 0.0)};
    if (shape.size() == 2) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(shape[1]));
      std::uniform_real_distribution<double> u(-bound, bound);
      for (double& v : t.values) v = u(rng);
    }
    bundle.tensors.emplace(name, std::move(t));
  }
  return bundle;
}

}  // namespace dprlns
