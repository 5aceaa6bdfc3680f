#include "fpsc/report_json.hpp"

#include <ctime>
#include <sstream>

#include <json.hpp>

#include "fpsc/word.hpp"

namespace fpsc {

namespace {

using json = nlohmann::ordered_json;

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string ratio(long long num, long long den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

json star_to_json(const StarReport& rep, const Presentation* pres) {
  json j;
  j["kind"] = "star-report";
  j["metric"] = rep.metric;
  j["n"] = rep.n;
  j["passed"] = rep.passed;
  j["exact"] = rep.exact;
  j["worst_ratio"] = ratio(rep.worst_num, rep.worst_den);
  j["worst_is_bound"] = rep.worst_is_bound;
  if (rep.exact && pres != nullptr && !rep.worst_piece.word.empty()) {
    json wp;
    wp["word"] = to_string(rep.worst_piece.word, pres->factors);
    wp["syllables"] = rep.worst_piece.syllable_count;
    wp["letters"] = rep.worst_piece.letter_count;
    wp["partial_tail"] = rep.worst_piece.partial_tail;
    j["worst_piece"] = wp;
  }
  j["duplicate_relators"] = rep.duplicate_relators;
  j["self_inverse_conjugate"] = rep.self_inverse_conjugate;
  j["proper_power_relator"] = rep.proper_power_relator;
  json per = json::array();
  for (const auto& st : rep.per_relator) {
    json r;
    r["relator"] = st.relator;
    r["worst_piece"] = st.worst_piece;
    r["relator_length"] = st.relator_length;
    r["exact"] = st.exact;
    per.push_back(r);
  }
  j["per_relator"] = per;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

}  // namespace

std::string star_report_json(const StarReport& rep, const Presentation& pres,
                             bool with_timestamp) {
  json j = star_to_json(rep, &pres);
  if (with_timestamp) j["generated"] = timestamp_utc();
  return j.dump(2) + "\n";
}

std::string build_report_json(const BuildReport& rep, bool with_timestamp) {
  json j;
  j["kind"] = "build-report";
  j["n"] = rep.n;
  j["q"] = rep.q;
  j["q_overridden"] = rep.q_overridden;
  j["q_chosen"] = rep.q_chosen;
  j["ok"] = rep.ok;
  j["star"] = star_to_json(rep.star, nullptr);
  j["relator_not_proper_power"] = rep.relator_not_proper_power;
  j["proper_powers_ok"] = rep.proper_powers_ok;

  if (rep.q_chosen) {
    json cj;
    cj["alpha"] = "1/" + std::to_string(rep.cubical.alpha_den);
    cj["passed"] = rep.cubical.passed;
    cj["exact"] = rep.cubical.exact;
    cj["achieved"] = ratio(rep.cubical.achieved_num, rep.cubical.achieved_den);
    json cones = json::array();
    for (const auto& c : rep.cubical.cones) {
      json cc;
      cc["relator"] = c.relator;
      cc["systole"] = c.sys;
      cc["wall_bound"] = c.wall_bound;
      cc["worst_cone_bound"] = c.worst_cone_bound;
      cc["cone_ok"] = c.cone_ok;
      cc["wall_ok"] = c.wall_ok;
      cones.push_back(cc);
    }
    cj["cones"] = cones;
    if (!rep.cubical.notes.empty()) cj["notes"] = rep.cubical.notes;
    j["cubical"] = cj;

    json pj;
    pj["ok"] = rep.properness.ok;
    json pcones = json::array();
    for (const auto& c : rep.properness.cones) {
      json cc;
      cc["relator"] = c.relator;
      cc["structural"] = c.structural;
      cc["hyperplanes"] = c.hyperplane_count;
      cc["worst_carrier_diameter"] = c.worst_carrier_diameter;
      cc["carriers_embedded"] = c.carriers_embedded;
      cc["carrier_diameter_ok"] = c.carrier_diameter_ok;
      cc["complements_connected"] = c.complements_connected;
      cc["complements_zero_winding"] = c.complements_zero_winding;
      cc["complements_simply_connected"] = c.complements_simply_connected;
      cc["ok"] = c.ok;
      if (!c.failures.empty()) cc["failures"] = c.failures;
      pcones.push_back(cc);
    }
    pj["cones"] = pcones;
    j["properness"] = pj;

    json wj = json::array();
    for (const auto& w : rep.walls) {
      json ww;
      ww["relator"] = w.relator;
      ww["structural"] = w.structural;
      ww["circle_length"] = w.circle_length;
      ww["even"] = w.even;
      ww["wall_count"] = w.wall_count;
      ww["letter_wall_count"] = w.letter_wall_count;
      ww["b8_condition1"] = w.b8_condition1;
      ww["b8_condition3"] = w.b8_condition3;
      ww["symmetries"] = w.symmetry_count;
      wj.push_back(ww);
    }
    j["walls"] = wj;
  }
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  if (with_timestamp) j["generated"] = timestamp_utc();
  return j.dump(2) + "\n";
}

std::string dual_summaries_json(const std::vector<DualSummary>& ds, long long q,
                                bool with_timestamp) {
  json j;
  j["kind"] = "dual-report";
  j["q"] = q;
  json arr = json::array();
  for (const auto& d : ds) {
    json dj;
    dj["relator"] = d.relator;
    dj["circle_length"] = d.circle_length;
    dj["wall_count"] = d.wall_count;
    dj["letter_wall_count"] = d.letter_wall_count;
    dj["dualized"] = d.dualized;
    if (d.dualized) {
      dj["vertices"] = d.vertices;
      dj["edges"] = d.edge_count;
      dj["dimension"] = d.dimension;
      dj["connected"] = d.connected;
      dj["median_ok"] = d.median_ok;
    }
    if (!d.note.empty()) dj["note"] = d.note;
    arr.push_back(dj);
  }
  j["cones"] = arr;
  if (with_timestamp) j["generated"] = timestamp_utc();
  return j.dump(2) + "\n";
}

std::string star_report_text(const StarReport& rep) {
  std::ostringstream os;
  os << (rep.metric == "letters" ? "C'(1/" : "C'_*(1/") << rep.n << "): "
     << (rep.passed ? "PASS" : "FAIL") << "  worst piece ratio " << ratio(rep.worst_num, rep.worst_den)
     << " (" << rep.metric << (rep.exact ? ", exact" : ", certified bound") << ")\n";
  for (const auto& st : rep.per_relator) {
    os << "  relator " << st.relator << ": worst piece " << st.worst_piece << " of "
       << st.relator_length << (st.exact ? "" : " (upper bound)") << "\n";
  }
  if (rep.duplicate_relators) os << "  duplicate relators present\n";
  if (rep.self_inverse_conjugate) os << "  a relator is conjugate to its inverse\n";
  if (rep.proper_power_relator) os << "  a relator is a proper power\n";
  for (const auto& n : rep.notes) os << "  note: " << n << "\n";
  return os.str();
}

std::string build_report_text(const BuildReport& rep) {
  std::ostringstream os;
  os << "build: " << (rep.ok ? "PASS" : "FAIL") << "  n=" << rep.n;
  if (rep.q_chosen) os << "  q=" << rep.q << (rep.q_overridden ? " (override)" : " (chosen)");
  os << "\n";
  os << "star " << (rep.star.passed ? "pass" : "fail") << " ("
     << ratio(rep.star.worst_num, rep.star.worst_den) << ")";
  os << ", proper powers " << (rep.proper_powers_ok ? "ok" : "present") << "\n";
  if (rep.q_chosen) {
    os << "cubical C'(1/" << rep.cubical.alpha_den << ") "
       << (rep.cubical.passed ? "pass" : "fail") << ", achieved "
       << ratio(rep.cubical.achieved_num, rep.cubical.achieved_den) << "\n";
    os << "properness " << (rep.properness.ok ? "pass" : "fail") << "\n";
    for (const auto& w : rep.walls) {
      os << "cone " << w.relator << ": |w|=" << w.circle_length << " walls=" << w.wall_count
         << " b8(1)=" << (w.b8_condition1 ? "pass" : "fail")
         << " b8(3)=" << (w.b8_condition3 ? "pass" : "fail")
         << (w.structural ? " (structural)" : "") << "\n";
    }
  }
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string presentation_summary_json(const Presentation& pres) {
  json j;
  j["artifact"] = "presentation";
  j["factors"] = json::array();
  for (const auto& f : pres.factors) {
    json jf;
    jf["name"] = f.name;
    jf["kind"] = f.kind == FactorKind::Free ? "free" : "abelian";
    jf["rank"] = f.rank;
    j["factors"].push_back(jf);
  }
  j["relators"] = json::array();
  for (const auto& r : pres.relators) {
    json jr;
    jr["syllables"] = r.syllable_length();
    jr["letters"] = r.letter_length();
    j["relators"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

std::string complex_summary_json(const CubeComplex& X, long long hyperplane_count) {
  json j;
  j["artifact"] = "complex";
  j["vertices"] = X.num_vertices;
  j["edges"] = X.edges.size();
  j["squares"] = X.squares.size();
  j["hyperplanes"] = hyperplane_count;
  return j.dump(2) + "\n";
}

std::string wallspace_summary_json(const FiniteWallspace& W, long long crossing_pairs) {
  json j;
  j["artifact"] = "wallspace";
  j["points"] = W.num_points;
  j["walls"] = W.walls.size();
  j["crossing_pairs"] = crossing_pairs;
  return j.dump(2) + "\n";
}

}  // namespace fpsc
