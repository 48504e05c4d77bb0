#pragma once

// Report documents: a lifting report serialized to a stable JSON layout and
// a text rendering generated from that document.  Integers are carried as
// decimal strings so arbitrary-precision values survive the trip; groups and
// subgroups are spelled out as invariant factors and generator coordinates.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "singlat/classify.hpp"
#include "singlat/cusp.hpp"
#include "singlat/resolution.hpp"

namespace singlat {

using Json = nlohmann::ordered_json;

struct ReportDocument {
  std::string schema_version = "1";
  std::string input;
  LiftingReport report;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

inline ReportDocument make_document(LiftingReport r) {
  ReportDocument doc{std::string("1"), graph_encoding(r.graph), std::move(r)};
  return doc;
}

namespace detail {

inline Json json_int(const Int& x) { return Json(x.str()); }

inline Json json_int_list(const std::vector<Int>& xs) {
  Json out = Json::array();
  for (const Int& x : xs) out.push_back(x.str());
  return out;
}

inline Json json_qmodz_list(const std::vector<QmodZ>& xs) {
  Json out = Json::array();
  for (const QmodZ& x : xs) out.push_back(x.str());
  return out;
}

inline Json json_qmodz_matrix(const Matrix<QmodZ>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

inline Json json_int_matrix(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

inline Json json_subgroup(const Subgroup& s) {
  Json gens = Json::array();
  for (const GroupElement& g : s.generators())
    gens.push_back(json_int_list(g.torsion_coords));
  Json out;
  out["generators"] = std::move(gens);
  out["order"] = json_int(s.order());
  return out;
}

inline Json json_form(const FinQuadFunction& q) {
  Json out;
  out["torsion"] = json_int_list(q.group().torsion_invariants());
  out["q_gen"] = json_qmodz_list(q.q_gen());
  out["b_matrix"] = json_qmodz_matrix(q.b_matrix());
  return out;
}

inline const char* lifting_name(Lifting l) {
  switch (l) {
    case Lifting::trivial: return "trivial";
    case Lifting::cover: return "cover";
    case Lifting::none: return "none";
    case Lifting::not_smoothable: return "not_smoothable";
  }
  throw error("unreachable lifting kind");
}

inline Lifting lifting_from_name(const std::string& s) {
  if (s == "trivial") return Lifting::trivial;
  if (s == "cover") return Lifting::cover;
  if (s == "none") return Lifting::none;
  if (s == "not_smoothable") return Lifting::not_smoothable;
  throw usage_error("unknown lifting verdict '" + s + "'");
}

inline std::vector<Int> int_list_from(const Json& j) {
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(int_from_string(x.get<std::string>()));
  return out;
}

inline std::vector<QmodZ> qmodz_list_from(const Json& j) {
  std::vector<QmodZ> out;
  for (const auto& x : j) out.push_back(QmodZ::parse(x.get<std::string>()));
  return out;
}

inline Matrix<QmodZ> qmodz_matrix_from(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  Matrix<QmodZ> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = QmodZ::parse(j.at(i).at(k).get<std::string>());
  return m;
}

inline FinQuadFunction form_from(const Json& j) {
  FinAbGroup group(0, int_list_from(j.at("torsion")));
  return FinQuadFunction(std::move(group), qmodz_list_from(j.at("q_gen")),
                         qmodz_matrix_from(j.at("b_matrix")));
}

inline Subgroup subgroup_from(const Json& j, const FinAbGroup& ambient) {
  std::vector<GroupElement> gens;
  for (const auto& coords : j.at("generators"))
    gens.push_back(torsion_element(ambient, int_list_from(coords)));
  Subgroup s = Subgroup::from_generators(ambient, gens);
  if (s.order() != int_from_string(j.at("order").get<std::string>()))
    throw usage_error("subgroup order in the document does not match its "
                      "generators");
  return s;
}

}  // namespace detail

// Derived cusp facts included in the document for machine readers; they are
// recomputed from the graph, never parsed back.
inline Json cusp_data_json(const ResolutionGraph& g) {
  const std::vector<Int>& seq = g.cycle();
  const CuspMonodromy m = monodromy(seq);
  Json out;
  out["monodromy"] = detail::json_int_matrix(m.A);
  out["trace"] = detail::json_int(m.t);
  out["torsion"] = detail::json_int_list(link_torsion(seq).torsion_invariants());
  bool dual_defined = false;
  for (const Int& d : seq) dual_defined = dual_defined || d > 2;
  for (const Int& d : seq)
    if (d < 2) dual_defined = false;
  out["dual_cycle"] = dual_defined ? Json(cycle_string(dual_cusp(seq))) : Json();
  const LciCover cover = lci_cover(seq);
  Json cj;
  cj["group_order"] = detail::json_int(cover.group_order);
  cj["cycle"] = cycle_string(cover.cover_seq);
  cj["a_nonneg"] = cover.a_nonneg;
  out["cyclic_cover"] = std::move(cj);
  return out;
}

inline Json document_json(const ReportDocument& doc) {
  const LiftingReport& r = doc.report;
  Json j;
  j["schema_version"] = doc.schema_version;
  j["input"] = doc.input;
  {
    Json inv;
    inv["genus"] = detail::json_int(r.inv.genus);
    inv["loops"] = detail::json_int(r.inv.loops);
    inv["b1"] = detail::json_int(r.inv.b1);
    inv["b2"] = detail::json_int(r.inv.b2);
    inv["chi"] = detail::json_int(r.inv.chi);
    inv["k_sq"] = detail::json_int(r.inv.k_sq);
    inv["emb_dim"] = detail::json_int(r.inv.emb_dim);
    inv["p"] = detail::json_int(r.inv.p);
    inv["is_lci"] = r.inv.is_lci;
    inv["smoothable_necessary"] = r.inv.smoothable_necessary;
    j["invariants"] = std::move(inv);
  }
  if (r.milnor) {
    Json m;
    m["mu0"] = detail::json_int(r.milnor->mu0);
    m["mu_plus"] = detail::json_int(r.milnor->mu_plus);
    m["mu_minus"] = detail::json_int(r.milnor->mu_minus);
    j["milnor"] = std::move(m);
  } else {
    j["milnor"] = Json();
  }
  if (r.link) {
    Json l;
    l["free_rank"] = r.link->h1.free_rank();
    l["form"] = detail::json_form(r.link->torsion);
    j["link"] = std::move(l);
  } else {
    j["link"] = Json();
  }
  {
    Json data = Json::array();
    for (const SmoothingDatum& s : r.data) {
      Json d;
      d["subgroup"] = detail::json_subgroup(s.I);
      d["perp"] = detail::json_subgroup(s.I_perp);
      d["induced"] = detail::json_form(s.induced);
      d["cover_group_order"] = detail::json_int(s.cover_group_order);
      d["component_count"] = detail::json_int(s.component_count);
      d["permissible"] = s.permissible;
      d["note"] = s.note;
      data.push_back(std::move(d));
    }
    j["isotropic_data"] = std::move(data);
  }
  j["lifting"] = detail::lifting_name(r.lifting);
  if (r.cover) {
    Json c;
    c["group_order"] = detail::json_int(r.cover->group_order);
    c["graph"] = graph_encoding(r.cover->cover);
    j["cover"] = std::move(c);
  } else {
    j["cover"] = Json();
  }
  j["total_components"] =
      r.total_components ? detail::json_int(*r.total_components) : Json();
  if (r.graph.kind() == GraphKind::cusp_cycle)
    j["cusp_data"] = cusp_data_json(r.graph);
  j["notes"] = r.notes;
  return j;
}

inline std::string serialize(const ReportDocument& doc) {
  return document_json(doc).dump(2) + "\n";
}

inline ReportDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(std::string("malformed report document: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<std::string>() != "1")
      throw usage_error("unsupported schema_version");
    const std::string input = j.at("input").get<std::string>();
    const ResolutionGraph graph = parse_graph(input);
    const Json& vi = j.at("invariants");
    ResolutionInvariants inv;
    inv.genus = int_from_string(vi.at("genus").get<std::string>());
    inv.loops = int_from_string(vi.at("loops").get<std::string>());
    inv.b1 = int_from_string(vi.at("b1").get<std::string>());
    inv.b2 = int_from_string(vi.at("b2").get<std::string>());
    inv.chi = int_from_string(vi.at("chi").get<std::string>());
    inv.k_sq = int_from_string(vi.at("k_sq").get<std::string>());
    inv.emb_dim = int_from_string(vi.at("emb_dim").get<std::string>());
    inv.p = int_from_string(vi.at("p").get<std::string>());
    inv.is_lci = vi.at("is_lci").get<bool>();
    inv.smoothable_necessary = vi.at("smoothable_necessary").get<bool>();
    LiftingReport r(graph, inv);
    if (!j.at("milnor").is_null()) {
      const Json& m = j.at("milnor");
      r.milnor = MilnorInvariants{
          int_from_string(m.at("mu0").get<std::string>()),
          int_from_string(m.at("mu_plus").get<std::string>()),
          int_from_string(m.at("mu_minus").get<std::string>())};
    }
    if (!j.at("link").is_null()) {
      const Json& l = j.at("link");
      FinQuadFunction form = detail::form_from(l.at("form"));
      FinAbGroup h1(l.at("free_rank").get<std::size_t>(),
                    form.group().torsion_invariants());
      r.link = LinkHomology{std::move(h1), std::move(form)};
    }
    for (const Json& d : j.at("isotropic_data")) {
      if (!r.link)
        throw usage_error("isotropic data without a link section");
      const FinAbGroup& ambient = r.link->torsion.group();
      r.data.push_back(SmoothingDatum{
          detail::subgroup_from(d.at("subgroup"), ambient),
          detail::subgroup_from(d.at("perp"), ambient),
          detail::form_from(d.at("induced")),
          int_from_string(d.at("cover_group_order").get<std::string>()),
          int_from_string(d.at("component_count").get<std::string>()),
          d.at("permissible").get<bool>(), d.at("note").get<std::string>()});
    }
    r.lifting = detail::lifting_from_name(j.at("lifting").get<std::string>());
    if (!j.at("cover").is_null()) {
      const Json& c = j.at("cover");
      r.cover = CoverInfo{
          int_from_string(c.at("group_order").get<std::string>()),
          parse_graph(c.at("graph").get<std::string>())};
    }
    if (!j.at("total_components").is_null())
      r.total_components =
          int_from_string(j.at("total_components").get<std::string>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return ReportDocument{"1", input, std::move(r)};
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(std::string("malformed report document: ") + e.what());
  }
}

namespace detail {

inline std::string group_text(std::size_t free_rank,
                              const std::vector<std::string>& torsion) {
  std::string out;
  if (free_rank == 1) out = "Z";
  else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
  for (const std::string& t : torsion) {
    if (!out.empty()) out += " (+) ";
    out += "Z/" + t;
  }
  if (out.empty()) out = "0";
  return out;
}

inline std::string join(const Json& arr, const char* sep) {
  std::string out;
  bool first = true;
  for (const auto& x : arr) {
    if (!first) out += sep;
    first = false;
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

}  // namespace detail

// Human-readable rendering, produced from the serialized document alone so
// the two formats can never drift apart.
inline std::string render_text(const ReportDocument& doc) {
  const Json j = document_json(doc);
  std::string out;
  out += "input: " + j.at("input").get<std::string>() + "\n";
  const Json& vi = j.at("invariants");
  out += "invariants: genus " + vi.at("genus").get<std::string>() + ", loops " +
         vi.at("loops").get<std::string>() + ", b1 " +
         vi.at("b1").get<std::string>() + ", b2 " +
         vi.at("b2").get<std::string>() + ", chi " +
         vi.at("chi").get<std::string>() + "\n";
  out += "  K^2 " + vi.at("k_sq").get<std::string>() + ", emb_dim " +
         vi.at("emb_dim").get<std::string>() + ", p " +
         vi.at("p").get<std::string>() + ", lci " +
         (vi.at("is_lci").get<bool>() ? "yes" : "no") + ", smoothable bound " +
         (vi.at("smoothable_necessary").get<bool>() ? "yes" : "no") + "\n";
  if (!j.at("milnor").is_null()) {
    const Json& m = j.at("milnor");
    out += "milnor: mu0 " + m.at("mu0").get<std::string>() + ", mu+ " +
           m.at("mu_plus").get<std::string>() + ", mu- " +
           m.at("mu_minus").get<std::string>() + "\n";
  }
  if (!j.at("link").is_null()) {
    const Json& l = j.at("link");
    std::vector<std::string> torsion;
    for (const auto& t : l.at("form").at("torsion"))
      torsion.push_back(t.get<std::string>());
    out += "link H1: " +
           detail::group_text(l.at("free_rank").get<std::size_t>(), torsion) +
           "\n";
    if (!l.at("form").at("q_gen").empty())
      out += "  q on generators: " +
             detail::join(l.at("form").at("q_gen"), ", ") + "\n";
  }
  if (!j.at("isotropic_data").empty()) {
    out += "isotropic subgroups:\n";
    for (const Json& d : j.at("isotropic_data")) {
      out += "  - order " + d.at("subgroup").at("order").get<std::string>();
      std::string gens;
      for (const auto& g : d.at("subgroup").at("generators")) {
        if (!gens.empty()) gens += " ";
        gens += "(" + detail::join(g, ",") + ")";
      }
      if (!gens.empty()) out += " generated by " + gens;
      out += ", perp order " + d.at("perp").at("order").get<std::string>();
      out += ", cover group order " +
             d.at("cover_group_order").get<std::string>();
      out += ", components " + d.at("component_count").get<std::string>();
      out += d.at("permissible").get<bool>() ? ", permissible" : ", impermissible";
      const std::string note = d.at("note").get<std::string>();
      if (!note.empty()) out += " -- " + note;
      out += "\n";
    }
  }
  if (j.contains("cusp_data") && !j.at("cusp_data").is_null()) {
    const Json& c = j.at("cusp_data");
    out += "cusp data:\n";
    out += "  monodromy rows";
    for (const auto& row : c.at("monodromy"))
      out += " [" + detail::join(row, ",") + "]";
    out += ", trace " + c.at("trace").get<std::string>() + "\n";
    std::vector<std::string> torsion;
    for (const auto& t : c.at("torsion")) torsion.push_back(t.get<std::string>());
    out += "  link torsion: " + detail::group_text(0, torsion) + "\n";
    if (!c.at("dual_cycle").is_null())
      out += "  dual cycle: " + c.at("dual_cycle").get<std::string>() + "\n";
    const Json& cc = c.at("cyclic_cover");
    out += "  cyclic cover: group order " +
           cc.at("group_order").get<std::string>() + ", cycle " +
           cc.at("cycle").get<std::string>() + ", a_nonneg " +
           (cc.at("a_nonneg").get<bool>() ? "yes" : "no") + "\n";
  }
  out += "lifting: " + j.at("lifting").get<std::string>();
  if (!j.at("cover").is_null()) {
    const Json& c = j.at("cover");
    out += " (group order " + c.at("group_order").get<std::string>() +
           ", cover " + c.at("graph").get<std::string>() + ")";
  }
  out += "\n";
  out += "total components: ";
  out += j.at("total_components").is_null()
             ? "unknown"
             : j.at("total_components").get<std::string>();
  out += "\n";
  if (!j.at("notes").empty()) {
    out += "notes:\n";
    for (const auto& n : j.at("notes"))
      out += "  - " + n.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace singlat
