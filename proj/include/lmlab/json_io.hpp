#pragma once

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lmlab/cochain.hpp"
#include "lmlab/harness.hpp"
#include "lmlab/homology.hpp"
#include "lmlab/simplex.hpp"

namespace lmlab {

using json = nlohmann::json;

// Interchange format for complexes, shared by every module and the CLI:
// {"n": int, "d": int, "faces": [[v0, ..., vd], ...]} with faces in colex order.
inline json complex_to_json(const complex& y) {
  json faces = json::array();
  for (index_t r : y.face_ranks) faces.push_back(face_unrank(r, y.d, y.n).vertices);
  return json{{"n", y.n}, {"d", y.d}, {"faces", faces}};
}

inline complex complex_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("d") || !j.contains("faces"))
    throw std::invalid_argument("complex json: needs n, d, faces");
  complex y(j.at("n").get<int>(), j.at("d").get<int>());
  for (const auto& verts : j.at("faces")) {
    face f;
    f.vertices = verts.get<std::vector<int>>();
    f.canonicalize();
    y.add_face(f);
  }
  return y;
}

inline json bigint_to_json(const bigint& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline json torsion_to_json(const std::vector<bigint>& torsion) {
  json arr = json::array();
  for (const auto& t : torsion) arr.push_back(bigint_to_json(t));
  return arr;
}

inline json summary_to_json(const homology_summary& h) {
  return json{{"free_rank", h.free_rank}, {"torsion", torsion_to_json(h.torsion)}};
}

inline json trial_to_json(const trial_record& r, campaign_kind kind) {
  json j{{"n", r.n}, {"d", r.d}, {"seed", r.seed}};
  switch (kind) {
    case campaign_kind::hitting:
      j["t_iso"] = r.t_iso;
      j["t_hom"] = r.t_hom;
      j["coincide"] = r.coincide;
      j["rank_before"] = r.rank_before;
      j["torsion_before"] = torsion_to_json(r.torsion_before);
      break;
    case campaign_kind::rank_structure:
      j["m"] = r.probe_m;
      j["free_rank"] = r.free_rank;
      j["torsion"] = torsion_to_json(r.torsion);
      j["isolated"] = r.isolated;
      j["rank_equal"] = r.rank_equal;
      j["conditions_pass"] = r.conditions_pass;
      j["cond1_evaluated"] = r.cond1_evaluated;
      break;
    case campaign_kind::torsion_scan: {
      json events = json::array();
      for (const auto& e : r.events)
        events.push_back(json{{"m", e.m}, {"torsion", torsion_to_json(e.factors)}});
      j["events"] = events;
      break;
    }
    case campaign_kind::noadjacent:
      j["violation"] = r.violation;
      break;
  }
  return j;
}

inline void write_trials_jsonl(const campaign_result& res, std::ostream& os) {
  for (const auto& r : res.records) os << trial_to_json(r, res.config.kind).dump() << "\n";
}

inline void write_summary_csv(const campaign_result& res, std::ostream& os) {
  os << "n,trials,coincide_frac,mean_gap,max_gap,rank_eq_frac,torsion_events,stderr_coincide\n";
  char buf[256];
  for (const auto& s : res.summaries) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%lld,%.6f,%lld,%.6f\n", s.n, s.trials,
                  s.coincide_frac, s.mean_gap, static_cast<long long>(s.max_gap), s.rank_eq_frac,
                  static_cast<long long>(s.torsion_events), s.stderr_coincide);
    os << buf;
  }
}

inline json audit_record_to_json(const audit_record& rec) {
  json j;
  j["support"] = rec.support;
  j["beta"] = rec.beta;
  if (rec.b_set)
    j["b_set"] = *rec.b_set;
  else
    j["b_set"] = "inf";
  j["b_min_cochain"] = rec.b_cochain;
  j["weight"] = rec.weight;
  j["bound"] = rec.bound;
  j["ok"] = rec.ok;
  return j;
}

inline experiment_config config_from_json(const json& j) {
  experiment_config cfg;
  if (j.contains("kind")) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "hitting")
      cfg.kind = campaign_kind::hitting;
    else if (k == "rank")
      cfg.kind = campaign_kind::rank_structure;
    else if (k == "torsion")
      cfg.kind = campaign_kind::torsion_scan;
    else if (k == "noadjacent")
      cfg.kind = campaign_kind::noadjacent;
    else
      throw std::invalid_argument("config: unknown kind " + k);
  }
  if (j.contains("d")) cfg.d = j.at("d").get<int>();
  if (j.contains("n")) {
    if (j.at("n").is_array())
      cfg.ns = j.at("n").get<std::vector<int>>();
    else
      cfg.ns = {j.at("n").get<int>()};
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("stride")) cfg.stride = j.at("stride").get<int>();
  if (j.contains("c")) cfg.c = j.at("c").get<double>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("caps")) {
    const auto& c = j.at("caps");
    if (c.contains("cond2_k_max")) cfg.caps.cond2_k_max = c.at("cond2_k_max").get<int>();
    if (c.contains("cond1_max_facets"))
      cfg.caps.cond1_max_facets = c.at("cond1_max_facets").get<index_t>();
    if (c.contains("cond1_budget")) cfg.caps.cond1_budget = c.at("cond1_budget").get<index_t>();
    if (c.contains("pattern_cap")) cfg.caps.pattern_cap = c.at("pattern_cap").get<index_t>();
    if (c.contains("coset_cap")) cfg.caps.coset_cap = c.at("coset_cap").get<index_t>();
  }
  return cfg;
}

}  // namespace lmlab
