// SPDX-License-Identifier: Apache-2.0
#include "prophecke/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ph {

using nlohmann::json;

namespace {

const std::map<std::string, std::string>& preset_table() {
  static const std::map<std::string, std::string> t = {
      {"sl2-p3", R"({"name":"sl2-p3","root":{"type":"A1"},
        "group":{"q":3,"zkappa":[2],"ns_squares":[[1]]},
        "notes":"SL2 over a field with residue field F_3; n_s^2 is the image of -1"})"},
      {"sl2-p2", R"({"name":"sl2-p2","root":{"type":"A1"},"group":{"q":2},
        "notes":"SL2 with residue field F_2; Z_kappa trivial"})"},
      {"pgl2-p3", R"({"name":"pgl2-p3","root":{"type":"custom","pairing":{"roots":[[1]],"coroots":[[2]]}},
        "group":{"q":3,"zkappa":[2]},
        "notes":"PGL2-type pairing with residue field F_3"})"},
      {"a1xa1-p2", R"({"name":"a1xa1-p2","root":{"type":"A1xA1"},"group":{"q":2},
        "notes":"SL2 x SL2 with residue field F_2"})"},
      {"a1xa1-p3", R"({"name":"a1xa1-p3","root":{"type":"A1xA1"},
        "group":{"q":3,"zkappa":[2,2],"ns_squares":[[1,0],[0,1]]},
        "notes":"SL2 x SL2 with residue field F_3"})"},
      {"a2-p2", R"({"name":"a2-p2","root":{"type":"custom",
        "pairing":{"roots":[[1,0],[0,1]],"coroots":[[2,-1],[-1,2]]}},"group":{"q":2},
        "notes":"PGL3-type pairing (adjoint) with residue field F_2"})"},
      {"sl3-p2", R"({"name":"sl3-p2","root":{"type":"A2"},"group":{"q":2},
        "notes":"SL3 with residue field F_2"})"},
      {"sl3-p3", R"({"name":"sl3-p3","root":{"type":"A2"},
        "group":{"q":3,"zkappa":[2,2],"ns_squares":[[1,0],[0,1]]},
        "notes":"SL3 with residue field F_3"})"},
  };
  return t;
}

IMat mat_of(const json& j, const std::string& path) {
  require(j.is_array(), path + ": expected a list of integer lists");
  IMat m;
  for (auto& row : j) {
    require(row.is_array(), path + ": expected a list of integer lists");
    IVec r;
    for (auto& x : row) {
      require(x.is_number_integer(), path + ": expected integers");
      r.push_back(x.get<int>());
    }
    m.push_back(r);
  }
  return m;
}

IVec vec_of(const json& j, const std::string& path) {
  require(j.is_array(), path + ": expected a list of integers");
  IVec r;
  for (auto& x : j) {
    require(x.is_number_integer(), path + ": expected integers");
    r.push_back(x.get<int>());
  }
  return r;
}

}  // namespace

GroupConfig config_from_json(const json& j) {
  GroupConfig c;
  require(j.is_object(), "config: top level must be an object");
  c.name = j.value("name", std::string("custom"));
  c.notes = j.value("notes", std::string());
  require(j.contains("root"), "config: missing 'root'");
  const json& r = j.at("root");
  std::string type = r.value("type", std::string("custom"));
  if (type != "custom" && !r.contains("pairing")) {
    c.root = root_config_for_type(type);
  } else {
    require(r.contains("pairing"), "root.pairing: required for custom root data");
    c.root.type = type;
    c.root.simple_roots = mat_of(r.at("pairing").at("roots"), "root.pairing.roots");
    c.root.simple_coroots = mat_of(r.at("pairing").at("coroots"), "root.pairing.coroots");
  }
  if (r.contains("cartan")) c.root.cartan = mat_of(r.at("cartan"), "root.cartan");
  require(j.contains("group"), "config: missing 'group'");
  const json& g = j.at("group");
  require(g.contains("q") && g.at("q").is_number_integer(), "group.q: required integer");
  c.q = g.at("q").get<long long>();
  if (g.contains("zkappa")) c.zkappa = vec_of(g.at("zkappa"), "group.zkappa");
  if (g.contains("zk_action")) {
    for (size_t i = 0; i < g.at("zk_action").size(); ++i)
      c.zk_action.push_back(mat_of(g.at("zk_action")[i], "group.zk_action[" + std::to_string(i) + "]"));
  }
  if (g.contains("ns_squares")) c.ns_squares = mat_of(g.at("ns_squares"), "group.ns_squares");
  if (g.contains("lambda_aff")) c.lambda_aff_torsion = mat_of(g.at("lambda_aff"), "group.lambda_aff");
  if (g.contains("affine_lifts")) c.affine_lifts = mat_of(g.at("affine_lifts"), "group.affine_lifts");
  if (g.contains("c")) {
    require(g.at("c").is_object(), "group.c: expected an object keyed by generator name");
    for (auto& [name, terms] : g.at("c").items()) {
      std::vector<TorsTerm> tt;
      for (auto& t : terms) {
        require(t.is_array() && t.size() == 2, "group.c." + name + ": entries are [torsion, multiplicity]");
        tt.push_back({vec_of(t[0], "group.c." + name), t[1].get<int>()});
      }
      c.c_override[name] = tt;
    }
  }
  return c;
}

json config_to_json(const GroupConfig& c) {
  json j;
  j["name"] = c.name;
  j["notes"] = c.notes;
  j["root"]["type"] = c.root.type;
  j["root"]["pairing"]["roots"] = c.root.simple_roots;
  j["root"]["pairing"]["coroots"] = c.root.simple_coroots;
  j["group"]["q"] = c.q;
  if (!c.zkappa.empty()) j["group"]["zkappa"] = c.zkappa;
  if (!c.zk_action.empty()) j["group"]["zk_action"] = c.zk_action;
  if (!c.ns_squares.empty()) j["group"]["ns_squares"] = c.ns_squares;
  if (!c.lambda_aff_torsion.empty()) j["group"]["lambda_aff"] = c.lambda_aff_torsion;
  if (!c.affine_lifts.empty()) j["group"]["affine_lifts"] = c.affine_lifts;
  for (auto& [name, terms] : c.c_override) {
    json a = json::array();
    for (auto& t : terms) a.push_back(json::array({t.t, t.mult}));
    j["group"]["c"][name] = a;
  }
  return j;
}

GroupConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

GroupConfig load_config(const std::string& s) {
  auto& t = preset_table();
  auto it = t.find(s);
  if (it != t.end()) return config_from_json(json::parse(it->second));
  return load_config_file(s);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [k, _] : preset_table()) v.push_back(k);
    return v;
  }();
  return names;
}

bool is_preset(const std::string& name) { return preset_table().count(name) > 0; }

std::string config_digest(const GroupConfig& c) {
  std::string s = config_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace ph
