#pragma once

// Toroidal horospherical embeddings G x_P Y, treated as toric bundles with
// fiber Y over the flag variety G/P.

#include "ekt/bundle.hpp"

namespace ekt {

struct HorosphericalDatum {
  RootDatum root_datum{IntMatrix{{2}}};
  std::vector<int> I;
  std::size_t fiber_rank = 0;
  IntMatrix char_embedding;  // weight_rank x fiber_rank, column k is the image of e_k
  Fan fan;
};

inline HorosphericalDatum parse_horo(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("horospherical datum must be a JSON object");
  for (const char* key : {"cartan", "fiber_rank", "char_embedding", "fan"})
    if (!j.contains(key)) throw InputError(std::string("horospherical datum lacks \"") + key + "\"");
  if (j.contains("colors") && !j.at("colors").empty())
    throw InputError("colored fans are not supported: only toroidal embeddings (empty color set)");
  HorosphericalDatum d;
  try {
    d.root_datum = RootDatum(matrix_from_json(j.at("cartan"), "cartan"));
    d.I = j.value("I", std::vector<int>{});
    long long fr = j.at("fiber_rank").get<long long>();
    if (fr < 1) throw InputError("fiber_rank must be positive");
    d.fiber_rank = static_cast<std::size_t>(fr);
    d.char_embedding = matrix_from_json(j.at("char_embedding"), "char_embedding");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed horospherical datum: ") + e.what());
  }
  if (d.char_embedding.rows() != d.root_datum.rank() || d.char_embedding.cols() != d.fiber_rank)
    throw InputError("char_embedding must be weight_rank x fiber_rank");
  if (rank(d.char_embedding) != d.fiber_rank) throw InputError("char_embedding must be injective");
  d.fan = parse_fan(j.at("fan"));
  if (d.fan.rank != d.fiber_rank) throw InputError("fan rank differs from fiber_rank");
  return d;
}

struct HoroValidation {
  std::vector<int> unfixed_columns;  // embedding columns not fixed by W_I
  bool fan_valid = false;
  bool complete = false;
  std::optional<bool> cellular;  // absent when not decidable (e.g. incomplete fan)
  std::optional<IntVec> generic_vector;
  bool smooth = false;
  std::vector<std::string> violations;  // named failed preconditions

  bool ring_hypotheses() const { return unfixed_columns.empty() && fan_valid && complete && cellular.value_or(false); }
  bool presentation_hypotheses() const { return ring_hypotheses() && smooth; }
};

inline HoroValidation validate_horo(const HorosphericalDatum& d, std::optional<IntVec> v = std::nullopt,
                                    std::uint64_t seed = 0) {
  HoroValidation rep;
  FlagBase fb(d.root_datum, d.I, d.char_embedding);
  rep.unfixed_columns = fb.unfixed_columns();
  if (!rep.unfixed_columns.empty())
    rep.violations.push_back("char_embedding: some characters are not fixed by W_I, so they are not characters of P");
  rep.fan_valid = validate_fan(d.fan).valid();
  if (!rep.fan_valid) rep.violations.push_back("fan: fan axioms fail");
  rep.complete = is_complete(d.fan);
  if (!rep.complete) rep.violations.push_back("fan: not complete, so the embedding is not complete");
  rep.smooth = is_smooth_fan(d.fan);
  if (rep.fan_valid && rep.complete) {
    IntVec gv = v ? *v : search_generic(d.fan, seed);
    rep.generic_vector = gv;
    rep.cellular = check_cellular(d.fan, gv).verdict;
    if (!*rep.cellular) rep.violations.push_back("fan: not cellular for the chosen generic vector");
  }
  if (!rep.smooth) rep.violations.push_back("fan: not smooth, so no generators-and-relations presentation");
  return rep;
}

/// The equivariant K-ring of the embedding as the extended ring over R(P).
struct HoroRing {
  Fan fan;
  FlagBase base;

  ExtendedReport check(const Extended<FlagBase>& t) const { return extended_check(fan, base, t); }
  CongruenceSystem::QuotientRank box_rank(std::int64_t d) const { return extended_box_rank(fan, base, d); }
};

inline HoroRing k_horospherical(const HorosphericalDatum& d) {
  auto val = validate_horo(d);
  if (!val.ring_hypotheses()) {
    std::string msg = "horospherical hypotheses fail:";
    for (const auto& v : val.violations) msg += " " + v + ";";
    throw InputError(msg);
  }
  return HoroRing{d.fan, FlagBase(d.root_datum, d.I, d.char_embedding)};
}

inline BundlePresentation<FlagBase> horo_presentation(const HorosphericalDatum& d) {
  HoroRing r = k_horospherical(d);
  return bundle_presentation(r.fan, r.base);
}

}  // namespace ekt
