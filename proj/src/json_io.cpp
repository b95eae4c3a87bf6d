// JSON serialization for Hurwitz trees and validation reports.  Rationals
// travel as exact strings ("17/2"), differentials as expression strings that
// re-parse to the same object; branch positions are derived data and are not
// serialized.

#include <json.hpp>

#include "hurwitz/expr.hpp"
#include "hurwitz/tree.hpp"

namespace hurwitz {

namespace {

using ordered = nlohmann::ordered_json;

Rat parse_rat(const std::string& s) {
  size_t k = s.find('/');
  if (k == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, k)), std::stoll(s.substr(k + 1)));
}

}  // namespace

std::string tree_to_json(const HurwitzTree& T) {
  if (T.field == nullptr) throw std::invalid_argument("tree_to_json: tree has no field");
  ordered j;
  j["p"] = T.p();
  if (T.field->m() > 1) j["m"] = T.field->m();
  j["root"] = {{"depth", T.root_depth.str()}, {"jump", T.root_jump}};
  j["vertices"] = ordered::array();
  for (const auto& v : T.vertices)
    j["vertices"].push_back({{"id", v.id},
                             {"parent", v.parent},
                             {"thickness", v.thickness.str()},
                             {"depth", v.depth.str()},
                             {"omega", format_ratfunc(v.omega, "x")}});
  j["leaves"] = ordered::array();
  for (const auto& b : T.leaves)
    j["leaves"].push_back(
        {{"vertex", b.vertex}, {"conductor", b.conductor}, {"label", b.label}});
  return j.dump();
}

HurwitzTree tree_from_json(const std::string& text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("tree_from_json: ") + e.what());
  }
  try {
    uint32_t p = j.at("p").get<uint32_t>();
    uint32_t m = j.contains("m") ? j.at("m").get<uint32_t>() : 1;
    const Fq& k = Fq::get(p, m);
    HurwitzTree T;
    T.field = &k;
    T.root_depth = parse_rat(j.at("root").at("depth").get<std::string>());
    T.root_jump = j.at("root").at("jump").get<int>();
    for (const auto& jv : j.at("vertices"))
      T.vertices.push_back({jv.at("id").get<int>(), jv.at("parent").get<int>(),
                            parse_rat(jv.at("thickness").get<std::string>()),
                            parse_rat(jv.at("depth").get<std::string>()),
                            eval_univariate(jv.at("omega").get<std::string>(), k)});
    for (const auto& jb : j.at("leaves"))
      T.leaves.push_back({jb.at("vertex").get<int>(), jb.at("conductor").get<int>(),
                          jb.value("label", std::string()), std::nullopt});
    return T;
  } catch (const ordered::exception& e) {
    throw std::invalid_argument(std::string("tree_from_json: ") + e.what());
  }
}

std::string report_to_json(const TreeReport& r) {
  ordered j;
  j["all_pass"] = r.all_pass;
  j["checks"] = ordered::array();
  for (const auto& c : r.checks) {
    ordered jc = {{"axiom", c.axiom}, {"pass", c.pass}, {"location", c.location}};
    if (!c.lhs.empty()) {
      jc["lhs"] = c.lhs;
      jc["rhs"] = c.rhs;
    }
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  return j.dump();
}

}  // namespace hurwitz
