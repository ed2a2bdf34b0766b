#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "brace.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "laws.hpp"
#include "partitions.hpp"
#include "pq_catalog.hpp"
#include "presets.hpp"
#include "subgroup.hpp"

namespace braceforge {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw Error(ErrorCode::BadInput, "format must be json, csv or text, got '" + std::string(s) + "'");
}

namespace detail {

inline Json index_classes(const std::vector<std::vector<std::size_t>>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(c);
  return out;
}

inline Json perm_json(const Perm& p) {
  Json row = Json::array();
  for (Elem x : p.images()) row.push_back(x);
  return row;
}

inline std::vector<std::vector<long long>> json_rows(const Json& j, std::string_view what) {
  if (!j.is_array()) throw Error(ErrorCode::BadInput, std::string(what) + " must be an array of rows");
  std::vector<std::vector<long long>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::BadInput, std::string(what) + " rows must be arrays");
    auto& r = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(ErrorCode::BadInput, std::string(what) + " entries must be integers");
      r.push_back(v.get<long long>());
    }
  }
  return rows;
}

inline Json parse_json_text(const std::string& text, std::string_view where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string(where) + ": " + e.what());
  }
}

inline std::string law_status(const LawVerdict& l) {
  if (!l.applicable) return "not_applicable";
  return l.holds ? "pass" : "fail";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

// ---- groups --------------------------------------------------------------

inline Json group_to_json(const FiniteGroup& G) {
  return Json{{"order", G.order()}, {"table", table_rows(G)}, {"label", G.label()}};
}

/// { "order": n, "table": [[...]], "label": str }, validated as a group.
inline FiniteGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("table")) throw Error(ErrorCode::BadInput, "group JSON needs a \"table\"");
  auto rows = detail::json_rows(j.at("table"), "table");
  if (j.contains("order")) {
    if (!j.at("order").is_number_integer() || j.at("order").get<long long>() != static_cast<long long>(rows.size())) {
      throw Error(ErrorCode::BadInput, "\"order\" disagrees with the table size");
    }
  }
  std::string label = "table";
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw Error(ErrorCode::BadInput, "\"label\" must be a string");
    label = j.at("label").get<std::string>();
  }
  return group_from_table(rows, label);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents) || !out.flush()) throw Error(ErrorCode::BadInput, "cannot write '" + path + "'");
}

inline FiniteGroup load_group_file(const std::string& path) {
  return group_from_json(detail::parse_json_text(read_file(path), path));
}

// ---- subgroups and braces ------------------------------------------------

inline Json subgroup_to_json(const PermSubgroup& N) {
  Json elems = Json::array();
  for (const Perm& p : N.elements()) elems.push_back(detail::perm_json(p));
  return Json{{"base", N.group().label()}, {"elements", std::move(elems)}};
}

inline PermSubgroup subgroup_from_json(const Json& j, const GroupPtr& G) {
  if (!j.is_object() || !j.contains("elements")) throw Error(ErrorCode::BadInput, "subgroup JSON needs \"elements\"");
  std::vector<Perm> elems;
  for (auto& row : detail::json_rows(j.at("elements"), "elements")) {
    std::vector<Elem> img;
    for (long long v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= G->order()) throw Error(ErrorCode::BadInput, "image out of range");
      img.push_back(static_cast<Elem>(v));
    }
    elems.emplace_back(std::move(img));
  }
  return PermSubgroup::from_elements(G, std::move(elems));
}

inline Json brace_to_json(const SkewBrace& B) {
  return Json{{"order", B.order()},
              {"dot", table_rows(B.dot_group())},
              {"circle", table_rows(B.circle_group())},
              {"label", B.label()}};
}

inline SkewBrace brace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dot") || !j.contains("circle")) {
    throw Error(ErrorCode::BadInput, "brace JSON needs \"dot\" and \"circle\"");
  }
  const std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "brace";
  return check_brace_axioms(detail::json_rows(j.at("dot"), "dot"), detail::json_rows(j.at("circle"), "circle"), label);
}

// ---- enumeration listings --------------------------------------------------

struct EnumerationListing {
  GroupPtr group;
  std::string group_type;
  std::vector<PermSubgroup> subgroups;
  std::vector<std::string> types;
  bool oracle_checked = false;
  bool oracle_agrees = true;
};

inline EnumerationListing make_listing(const GroupPtr& G, std::vector<PermSubgroup> subgroups,
                                       const GroupCatalog& catalog = GroupCatalog{}) {
  EnumerationListing l{G, catalog.identify(*G), std::move(subgroups), {}, false, true};
  for (const auto& N : l.subgroups) l.types.push_back(catalog.identify(abstract_group(N)));
  return l;
}

inline std::string listing_json(const EnumerationListing& l) {
  Json subs = Json::array();
  for (std::size_t i = 0; i < l.subgroups.size(); ++i) {
    Json s = subgroup_to_json(l.subgroups[i]);
    s["index"] = i;
    s["type"] = l.types[i];
    subs.push_back(std::move(s));
  }
  Json j{{"group", group_to_json(*l.group)}, {"group_type", l.group_type}, {"count", l.subgroups.size()},
         {"subgroups", std::move(subs)}};
  if (l.oracle_checked) j["oracle_agrees"] = l.oracle_agrees;
  return j.dump(2) + "\n";
}

inline std::string listing_csv(const EnumerationListing& l) {
  std::string out = "index,type,elements\n";
  for (std::size_t i = 0; i < l.subgroups.size(); ++i) {
    std::string elems;
    for (const Perm& p : l.subgroups[i].elements()) elems += (elems.empty() ? "" : " ") + p.to_string();
    out += std::to_string(i) + "," + detail::csv_field(l.types[i]) + "," + detail::csv_field(elems) + "\n";
  }
  return out;
}

inline std::string listing_text(const EnumerationListing& l) {
  std::ostringstream os;
  os << "group " << l.group->label() << " (" << l.group_type << ", order " << l.group->order() << ")\n";
  os << l.subgroups.size() << " regular G-stable subgroups\n";
  std::map<std::string, std::size_t> by_type;
  for (const auto& t : l.types) ++by_type[t];
  for (const auto& [t, c] : by_type) os << "  " << std::left << std::setw(10) << t << c << "\n";
  for (std::size_t i = 0; i < l.subgroups.size(); ++i) {
    os << "[" << i << "] " << l.types[i];
    for (const Perm& p : l.subgroups[i].generators()) os << " " << p.to_string();
    os << "\n";
  }
  if (l.oracle_checked) os << "oracle " << (l.oracle_agrees ? "agrees" : "DISAGREES") << "\n";
  return os.str();
}

inline std::string render_listing(const EnumerationListing& l, Format f) {
  switch (f) {
    case Format::Json: return listing_json(l);
    case Format::Csv: return listing_csv(l);
    case Format::Text: return listing_text(l);
  }
  return {};
}

// ---- classification reports ------------------------------------------------

inline Json laws_json(const std::vector<LawVerdict>& laws) {
  Json out = Json::object();
  for (const auto& l : laws) {
    Json v{{"status", detail::law_status(l)}, {"checked", l.checked}};
    if (!l.holds) v["witness"] = l.witness;
    out[l.name] = std::move(v);
  }
  return out;
}

inline Json report_to_json(const ClassificationReport& r) {
  Json subs = Json::array();
  Json inv = Json::array();
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    Json s = subgroup_to_json(r.subgroups[i]);
    s["index"] = i;
    if (!r.labels[i].empty()) s["label"] = r.labels[i];
    subs.push_back(std::move(s));
    const auto& v = r.invariants[i];
    inv.push_back(Json{{"type", v.type},
                       {"lambda_points", v.lambda_points},
                       {"rho_points", v.rho_points},
                       {"lambda_type", v.lambda_type},
                       {"rho_type", v.rho_type},
                       {"opposite", v.opposite == kNoIndex ? Json(nullptr) : Json(v.opposite)},
                       {"brace_class", r.brace_class_of[i]},
                       {"giso_class", r.giso_class_of[i]},
                       {"rho_class", r.rho_class_of[i]},
                       {"brace_witness", r.brace_witness[i].images},
                       {"giso_witness", r.giso_witness[i].images}});
  }
  Json info = Json::array();
  for (const auto& b : r.brace_info) {
    info.push_back(Json{{"members", b.members},
                        {"aut_br_order", b.aut_br_order},
                        {"predicted_size", b.predicted_size},
                        {"opposite_class", b.opposite_class == kNoIndex ? Json(nullptr) : Json(b.opposite_class)}});
  }
  Json group = group_to_json(*r.group);
  group["type"] = r.group_type;
  group["aut_order"] = r.aut_order;
  group["inner_aut_order"] = r.inner_aut_order;
  return Json{{"group", std::move(group)},
              {"subgroups", std::move(subs)},
              {"brace_classes", detail::index_classes(r.brace_classes)},
              {"giso_classes", detail::index_classes(r.giso_classes)},
              {"rho_classes", detail::index_classes(r.rho_classes)},
              {"invariants", std::move(inv)},
              {"brace_class_info", std::move(info)},
              {"laws", laws_json(r.laws)}};
}

inline std::string report_csv(const ClassificationReport& r) {
  std::string out =
      "index,label,type,lambda_points,rho_points,lambda_type,rho_type,opposite,brace_class,giso_class,rho_class\n";
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    const auto& v = r.invariants[i];
    out += std::to_string(i) + "," + detail::csv_field(r.labels[i]) + "," + detail::csv_field(v.type) + "," +
           std::to_string(v.lambda_points) + "," + std::to_string(v.rho_points) + "," + detail::csv_field(v.lambda_type) +
           "," + detail::csv_field(v.rho_type) + "," + (v.opposite == kNoIndex ? "" : std::to_string(v.opposite)) +
           "," + std::to_string(r.brace_class_of[i]) + "," + std::to_string(r.giso_class_of[i]) + "," +
           std::to_string(r.rho_class_of[i]) + "\n";
  }
  return out;
}

inline void laws_text(std::ostream& os, const std::vector<LawVerdict>& laws, const char* indent = "  ") {
  for (const auto& l : laws) {
    os << indent << std::left << std::setw(48) << l.name << " " << detail::law_status(l) << " (" << l.checked << ")";
    if (!l.holds) os << "  " << l.witness;
    os << "\n";
  }
}

inline std::string report_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "group " << r.group->label() << " (" << r.group_type << ", order " << r.group->order() << ", |Aut| "
     << r.aut_order << ", |Inn| " << r.inner_aut_order << ")\n";
  os << r.subgroups.size() << " subgroups, " << r.brace_classes.size() << " brace classes, " << r.giso_classes.size()
     << " G-iso classes, " << r.rho_classes.size() << " rho classes\n\n";
  os << "  idx  type      lam  rho  opp  brace giso rho  label\n";
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    const auto& v = r.invariants[i];
    os << "  " << std::right << std::setw(3) << i << "  " << std::left << std::setw(9) << v.type << std::right
       << std::setw(4) << v.lambda_points << std::setw(5) << v.rho_points << std::setw(5)
       << (v.opposite == kNoIndex ? std::string("-") : std::to_string(v.opposite)) << std::setw(6)
       << r.brace_class_of[i] << std::setw(5) << r.giso_class_of[i] << std::setw(5) << r.rho_class_of[i] << "  "
       << r.labels[i] << "\n";
  }
  os << "\nbrace classes\n";
  for (std::size_t c = 0; c < r.brace_info.size(); ++c) {
    const auto& b = r.brace_info[c];
    os << "  B" << c << " size " << b.members.size() << " = " << r.aut_order << "/" << b.aut_br_order << "  {"
       << detail::join(b.members) << "}\n";
  }
  os << "G-iso classes\n";
  for (std::size_t c = 0; c < r.giso_classes.size(); ++c) os << "  G" << c << " {" << detail::join(r.giso_classes[c]) << "}\n";
  os << "rho classes\n";
  for (std::size_t c = 0; c < r.rho_classes.size(); ++c) os << "  R" << c << " {" << detail::join(r.rho_classes[c]) << "}\n";
  os << "laws\n";
  laws_text(os, r.laws);
  return os.str();
}

inline std::string render_report(const ClassificationReport& r, Format f) {
  switch (f) {
    case Format::Json: return report_to_json(r).dump(2) + "\n";
    case Format::Csv: return report_csv(r);
    case Format::Text: return report_text(r);
  }
  return {};
}

// ---- order pq verification --------------------------------------------------

inline Json pq_to_json(const PqVerification& v) {
  Json cases = Json::array();
  for (const auto& c : v.cases) {
    Json catalog = Json::array();
    for (const auto& s : c.catalog) {
      Json e{{"family", s.family}, {"label", s.label}, {"generators", s.generators}};
      if (s.s >= 0) e["s"] = s.s;
      if (s.t >= 0) e["t"] = s.t;
      e["subgroup"] = subgroup_to_json(s.subgroup);
      catalog.push_back(std::move(e));
    }
    Json j{{"tag", to_string(c.pq.tag)},
           {"group", c.group->label()},
           {"subgroup_count", c.catalog.size()},
           {"expected_count", expected_subgroup_count(c.pq)},
           {"cross_checked", c.cross_checked},
           {"catalog", std::move(catalog)},
           {"brace_classes", detail::index_classes(c.report.brace_classes)},
           {"giso_classes", detail::index_classes(c.report.giso_classes)},
           {"rho_classes", detail::index_classes(c.report.rho_classes)},
           {"report_labels", c.report.labels},
           {"verdicts", laws_json(c.verdicts)},
           {"observations", c.observations}};
    if (c.cross_checked) j["enumerated_count"] = c.enumerated.size();
    cases.push_back(std::move(j));
  }
  Json braces = Json::array();
  for (const auto& b : v.braces) {
    Json e = brace_to_json(b.brace);
    e["dot_rule"] = b.dot_rule;
    e["circle_rule"] = b.circle_rule;
    braces.push_back(std::move(e));
  }
  return Json{{"p", v.p},
              {"q", v.q},
              {"g", v.g},
              {"cross_checked", v.cross_checked},
              {"all_verified", v.all_hold()},
              {"brace_classes", v.brace_classes},
              {"expected_brace_classes", v.expected_brace_classes},
              {"verdicts", laws_json(v.verdicts)},
              {"cases", std::move(cases)},
              {"braces", std::move(braces)}};
}

inline std::string pq_csv(const PqVerification& v) {
  std::string out = "case,verdict,status,checked,witness\n";
  auto rows = [&](const std::string& tag, const std::vector<LawVerdict>& ls) {
    for (const auto& l : ls) {
      out += tag + "," + l.name + "," + detail::law_status(l) + "," + std::to_string(l.checked) + "," +
             detail::csv_field(l.witness) + "\n";
    }
  };
  rows("braces", v.verdicts);
  for (const auto& c : v.cases) rows(std::string(to_string(c.pq.tag)), c.verdicts);
  return out;
}

inline std::string pq_text(const PqVerification& v) {
  std::ostringstream os;
  os << "order " << v.p * v.q << " = " << v.p << " * " << v.q;
  if (v.g) os << ", g = " << v.g;
  os << (v.cross_checked ? ", cross-checked against enumeration" : ", catalog only") << "\n";
  for (const auto& c : v.cases) {
    os << "\n[" << to_string(c.pq.tag) << "] G = " << c.group->label() << ": " << c.catalog.size()
       << " regular G-stable subgroups of this type (expected " << expected_subgroup_count(c.pq) << ")\n";
    std::map<std::string, std::size_t> fam;
    for (const auto& s : c.catalog) ++fam[s.family];
    for (const auto& [f, k] : fam) os << "  " << std::left << std::setw(8) << f << k << "\n";
    os << "  brace classes " << c.report.brace_classes.size() << ", G-iso classes " << c.report.giso_classes.size()
       << ", rho classes " << c.report.rho_classes.size() << "\n";
    laws_text(os, c.verdicts, "  ");
    for (const auto& o : c.observations) os << "  note: " << o << "\n";
  }
  os << "\nbraces: " << v.braces.size() << " catalog tables, " << v.brace_classes << " isomorphism classes (expected "
     << v.expected_brace_classes << ")\n";
  for (const auto& b : v.braces) os << "  " << std::left << std::setw(18) << b.label << b.circle_rule << "\n";
  laws_text(os, v.verdicts, "  ");
  os << (v.all_hold() ? "all claims verified\n" : "VIOLATIONS FOUND\n");
  return os.str();
}

inline std::string render_pq(const PqVerification& v, Format f) {
  switch (f) {
    case Format::Json: return pq_to_json(v).dump(2) + "\n";
    case Format::Csv: return pq_csv(v);
    case Format::Text: return pq_text(v);
  }
  return {};
}

}  // namespace braceforge
