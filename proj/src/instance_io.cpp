#include "dprlns/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dprlns/error.hpp"

namespace dprlns {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::vector<double> numbers(const std::string& line, std::size_t lineno) {
  std::istringstream in(line);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw ParseError(lineno, "expected a number, got '" + token + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Instance parse_solomon(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::string name;
  std::optional<double> capacity;
  std::vector<Node> nodes;

  enum class Section { Name, Preamble, Vehicle, Customer } section = Section::Name;
  bool saw_vehicle = false;
  bool saw_customer = false;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string key = upper(t);

    if (section == Section::Name && key != "VEHICLE") {
      name = t;
      section = Section::Preamble;
      continue;
    }
    if (key == "VEHICLE") {
      section = Section::Vehicle;
      saw_vehicle = true;
      continue;
    }
    if (key == "CUSTOMER") {
      if (!capacity) throw ParseError(lineno, "CUSTOMER section before VEHICLE capacity");
      section = Section::Customer;
      saw_customer = true;
      continue;
    }
    const bool header = std::isalpha(static_cast<unsigned char>(t.front())) != 0;
    switch (section) {
      case Section::Name:
      case Section::Preamble:
        throw ParseError(lineno, "unexpected content before VEHICLE section");
      case Section::Vehicle: {
        if (header) continue;  // NUMBER CAPACITY
        if (capacity) throw ParseError(lineno, "extra line in VEHICLE section");
        const auto v = numbers(t, lineno);
        if (v.size() != 2) throw ParseError(lineno, "VEHICLE row needs NUMBER and CAPACITY");
        capacity = v[1];
        break;
      }
      case Section::Customer: {
        if (header) continue;  // CUST NO. XCOORD. ...
        const auto v = numbers(t, lineno);
        if (v.size() != 7) {
          throw ParseError(lineno, "customer row needs 7 columns, got " + std::to_string(v.size()));
        }
        if (v[0] != static_cast<double>(nodes.size())) {
          throw ParseError(lineno, "customer numbers must run 0, 1, 2, ...");
        }
        if (nodes.empty() && v[3] != 0.0) {
          throw ParseError(lineno, "depot (customer 0) must have zero demand");
        }
        nodes.push_back(Node{static_cast<NodeId>(nodes.size()), v[1], v[2], v[3], v[4], v[5], v[6]});
        break;
      }
    }
  }
  if (!saw_vehicle || !capacity) throw ParseError(lineno, "missing VEHICLE section");
  if (!saw_customer) throw ParseError(lineno, "missing CUSTOMER section");
  if (nodes.size() < 2) throw ParseError(lineno, "CUSTOMER section needs a depot and a customer");
  try {
    return Instance(name, std::move(nodes), *capacity);
  } catch (const InvalidInstance& e) {
    throw ParseError(lineno, e.what());
  }
}

Instance parse_solomon(const std::string& text) {
  std::istringstream in(text);
  return parse_solomon(in);
}

Instance take_prefix(const Instance& instance, std::size_t n) {
  if (n < 1 || n > instance.customer_count()) {
    throw InvalidArgument("take_prefix: n must lie in [1, " +
                          std::to_string(instance.customer_count()) + "]");
  }
  std::vector<Node> nodes(instance.nodes().begin(),
                          instance.nodes().begin() + static_cast<std::ptrdiff_t>(n + 1));
  return Instance(instance.name(), std::move(nodes), instance.capacity());
}

std::string serialize_instance(const Instance& instance) {
  json nodes = json::array();
  for (const Node& n : instance.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"x", n.x},
                     {"y", n.y},
                     {"demand", n.demand},
                     {"tw_start", n.tw_start},
                     {"tw_end", n.tw_end},
                     {"service", n.service}});
  }
  json doc = {{"format", kInstanceFormat},
              {"name", instance.name()},
              {"capacity", instance.capacity()},
              {"nodes", std::move(nodes)}};
  return doc.dump(1) + "\n";
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kInstanceFormat) {
      throw ParseError(0, "unsupported instance format '" + doc.at("format").get<std::string>() + "'");
    }
    std::vector<Node> nodes;
    for (const auto& n : doc.at("nodes")) {
      nodes.push_back(Node{n.at("id").get<NodeId>(), n.at("x").get<double>(), n.at("y").get<double>(),
                           n.at("demand").get<double>(), n.at("tw_start").get<double>(),
                           n.at("tw_end").get<double>(), n.at("service").get<double>()});
    }
    return Instance(doc.at("name").get<std::string>(), std::move(nodes),
                    doc.at("capacity").get<double>());
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
}

Instance load_instance(const std::filesystem::path& path, std::optional<std::size_t> prefix) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  Instance inst = (first != std::string::npos && text[first] == '{') ? parse_instance(text)
                                                                      : parse_solomon(text);
  return prefix ? take_prefix(inst, *prefix) : inst;
}

std::string serialize_solution(const Instance& instance, const Solution& solution) {
  json routes = json::array();
  for (const auto& r : solution.routes) routes.push_back(r.customers);
  json doc = {{"format", kSolutionFormat},
              {"instance", instance.name()},
              {"cost", solution_cost(instance, solution)},
              {"vehicles", solution.routes.size()},
              {"routes", std::move(routes)}};
  return doc.dump(1) + "\n";
}

}  // namespace dprlns
