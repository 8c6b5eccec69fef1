// ekt: command-line front end for the equivariant K-theory toolkit.

#include "ekt/horo.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ekt;

namespace {

constexpr int kSchema = 1;

struct Options {
  std::uint64_t seed = 1;
  std::int64_t box = -1;  // -1: command default
  std::string v;
  bool trust_fan = false;
  std::string format = "json";
  bool timings = false;
  std::size_t samples = 25;
  std::int64_t degree = 3;
  std::int64_t hirzebruch = -1;
  std::vector<std::string> files;
};

struct Inputs {
  std::vector<std::string> names;
  std::string bytes;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    names.push_back(fs::path(path).filename().string());
    bytes += ss.str();
    bytes.push_back('\0');
    return ss.str();
  }

  json parse(const std::string& path) {
    std::string text = read(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(fs::path(path).filename().string() + ": malformed JSON: " + e.what());
    }
  }

  std::string digest() const {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return "sha256:" + ss.str();
  }
};

IntVec parse_vector(const std::string& s) {
  IntVec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("--v expects comma separated integers, got \"" + s + "\"");
    }
  }
  return v;
}

json cone_json(const Cone& c) { return c.rays; }

json violations_json(const ValidationReport& r) {
  json arr = json::array();
  for (const auto& v : r.violations) {
    json j{{"kind", v.kind}, {"items", v.items}, {"detail", v.detail}};
    if (v.witness) j["witness"] = *v.witness;
    arr.push_back(j);
  }
  return arr;
}

class Runner {
 public:
  explicit Runner(Options o) : opt_(std::move(o)) {}

  json run(const std::string& cmd) {
    if (cmd == "validate") return validate();
    if (cmd == "complete") return complete();
    if (cmd == "cellular") return cellular();
    if (cmd == "gkm-check") return gkm();
    if (cmd == "plp-check") return plp();
    if (cmd == "basis") return basis();
    if (cmd == "rank") return rank_cmd();
    if (cmd == "sr") return sr();
    if (cmd == "bundle") return bundle();
    if (cmd == "horo") return horo();
    if (cmd == "crosscheck") return crosscheck();
    throw InputError("unknown command " + cmd);
  }

  const Inputs& inputs() const { return in_; }

 private:
  const std::string& file(std::size_t k, const char* what) {
    if (opt_.files.size() <= k) throw InputError(std::string("missing ") + what + " argument");
    return opt_.files[k];
  }

  /// A fan given inline or as a path relative to the referring file.
  Fan fan_from(const json& j, const fs::path& dir) {
    if (j.is_string()) return load_fan((dir / j.get<std::string>()).string());
    return parse_fan(j);
  }

  Fan load_fan(const std::string& path, bool check = true) {
    json j = in_.parse(path);
    Fan f = parse_fan(j);
    if (check && !opt_.trust_fan) {
      auto rep = validate_fan(f);
      if (!rep.valid()) throw InputError("fan fails validation: " + rep.violations.front().detail);
    }
    return f;
  }

  IntVec generic_vector(const Fan& f) {
    if (!opt_.v.empty()) return parse_vector(opt_.v);
    return search_generic(f, opt_.seed);
  }

  std::int64_t box(std::int64_t dflt) const {
    if (opt_.box == -1) return dflt;
    if (opt_.box < 0) throw InputError("--box must be nonnegative");
    return opt_.box;
  }

  ConeTuple load_tuple(const std::string& path, const Fan& f) {
    json j = in_.parse(path);
    if (!j.is_object() || !j.contains("components")) throw InputError("tuple file needs \"components\"");
    if (j.contains("fan")) {
      Fan g = fan_from(j.at("fan"), fs::path(path).parent_path());
      if (g.rays != f.rays || g.max_cones != f.max_cones) throw InputError("tuple file refers to a different fan");
    }
    return tuple_from_json(j.at("components"), f.rank);
  }

  json validate() {
    Fan f = load_fan(file(0, "fan"), false);
    auto rep = validate_fan(f);
    return {{"valid", rep.valid()}, {"violations", violations_json(rep)}, {"warnings", f.warnings}, {"fan", to_json(f)}};
  }

  json complete() {
    Fan f = load_fan(file(0, "fan"));
    return {{"complete", is_complete(f)}};
  }

  json cellular_json(const CellularityReport& rep) {
    json j{{"verdict", rep.verdict}};
    if (rep.structure) {
      j["v"] = rep.structure->v;
      j["order"] = rep.structure->order;
      json tau = json::array();
      for (const auto& t : rep.structure->tau) tau.push_back(cone_json(t));
      j["tau"] = tau;
      j["cell_dims"] = rep.structure->cell_dim;
    }
    if (rep.failure) {
      json fj{{"kind", rep.failure->kind}};
      if (rep.failure->kind == "cycle") fj["cycle"] = rep.failure->cycle;
      if (rep.failure->kind == "nonsmooth") {
        fj["cone"] = rep.failure->cone;
        fj["face"] = cone_json(rep.failure->face);
        json inv = json::array();
        for (const auto& d : rep.failure->invariant_factors) inv.push_back(d.str());
        fj["invariant_factors"] = inv;
      }
      j["failure"] = fj;
    }
    return j;
  }

  json cellular() {
    Fan f = load_fan(file(0, "fan"));
    IntVec v = generic_vector(f);
    json j = cellular_json(check_cellular(f, v));
    j["v"] = v;
    return j;
  }

  json gkm() {
    Fan f = load_fan(file(0, "fan"));
    ConeTuple t = load_tuple(file(1, "tuple"), f);
    auto rep = gkm_check(f, t);
    json fails = json::array();
    for (const auto& w : rep.failures)
      fails.push_back({{"wall", w.wall_index},
                       {"face", cone_json(w.wall.face)},
                       {"cones", {w.wall.left, w.wall.right}},
                       {"character", w.wall.character},
                       {"difference", to_json(w.difference)}});
    return {{"verdict", rep.verdict}, {"failures", fails}};
  }

  json plp() {
    Fan f = load_fan(file(0, "fan"));
    ConeTuple t = load_tuple(file(1, "tuple"), f);
    auto rep = plp_check(f, t);
    json j{{"verdict", rep.verdict}};
    if (rep.witness) j["witness"] = {{"face", cone_json(rep.witness->face)}, {"cones", {rep.witness->cone_a, rep.witness->cone_b}}};
    return j;
  }

  json basis() {
    Fan f = load_fan(file(0, "fan"));
    auto rep = check_cellular(f, generic_vector(f));
    if (!rep.verdict) throw InputError("fan is not cellular for the chosen vector");
    FiltrationBasis b = build_filtration_basis_auto(f, *rep.structure, box(4));
    json elems = json::array();
    for (std::size_t p = 0; p < b.elements.size(); ++p)
      elems.push_back({{"cone", b.order[p]}, {"components", to_json(b.elements[p])}});
    auto gen = verify_generation(f, b, std::max<std::int64_t>(b.radius, 2), opt_.samples, opt_.seed);
    return {{"v", rep.structure->v},
            {"order", b.order},
            {"radius", b.radius},
            {"elements", elems},
            {"generation", {{"samples", gen.samples}, {"representable", gen.representable}}}};
  }

  json rank_cmd() {
    Fan f = load_fan(file(0, "fan"));
    auto rep = ordinary_k_rank(f, box(4));
    return {{"rank", rep.rank}, {"radius", rep.radius}, {"by_radius", rep.by_radius}, {"cones", f.max_cones.size()}};
  }

  json sr() {
    Fan f = load_fan(file(0, "fan"));
    auto pres = sr_presentation(f);
    auto img = sr_to_plp(f);
    auto probe = sr_surjectivity_probe(f, box(1), opt_.degree, opt_.samples, opt_.seed);
    return {{"presentation", to_json(pres)},
            {"images_members", img.members_ok},
            {"relations_zero", img.relations_zero},
            {"surjectivity",
             {{"radius", box(1)}, {"degree", opt_.degree}, {"samples", probe.samples}, {"solved", probe.solved}}}};
  }

  template <class B>
  json bundle_for(const Fan& fiber, const B& base, const std::optional<json>& tuple) {
    json j;
    if (tuple) {
      if (!tuple->contains("components")) throw InputError("tuple file needs \"components\"");
      auto t = extended_from_json(base, tuple->at("components"));
      auto rep = extended_check(fiber, base, t);
      j["verdict"] = rep.verdict;
      j["failing_walls"] = rep.failing_walls;
    }
    auto q = extended_box_rank(fiber, base, box(2));
    j["box_rank"] = {{"radius", box(2)}, {"rank", q.rank()}, {"members", q.members}, {"ideal", q.ideal}};
    if (is_smooth_fan(fiber) && is_complete(fiber)) {
      auto p = bundle_presentation(fiber, base);
      j["presentation"] = presentation_to_json(base, p.presentation);
      j["presentation_verified"] = p.verified;
    }
    return j;
  }

  json bundle() {
    Fan fiber = load_fan(file(0, "fiber fan"));
    const std::string& base_path = file(1, "base");
    json bj = in_.parse(base_path);
    if (bj.is_object() && bj.contains("fan")) bj["fan"] = to_json(fan_from(bj.at("fan"), fs::path(base_path).parent_path()));
    AnyBase base = base_from_json(bj, fiber.rank);
    std::optional<json> tuple;
    if (opt_.files.size() > 2) tuple = in_.parse(opt_.files[2]);
    json j = std::visit([&](const auto& b) { return bundle_for(fiber, b, tuple); }, base);
    j["base_kind"] = bj.at("kind");
    return j;
  }

  json horo() {
    json dj = in_.parse(file(0, "datum"));
    if (dj.is_object() && dj.contains("fan")) dj["fan"] = to_json(fan_from(dj.at("fan"), fs::path(opt_.files[0]).parent_path()));
    HorosphericalDatum d = parse_horo(dj);
    std::optional<IntVec> v;
    if (!opt_.v.empty()) v = parse_vector(opt_.v);
    auto val = validate_horo(d, v, opt_.seed);
    json j{{"unfixed_columns", val.unfixed_columns},
           {"fan_valid", val.fan_valid},
           {"complete", val.complete},
           {"smooth", val.smooth},
           {"violations", val.violations},
           {"ring_hypotheses", val.ring_hypotheses()}};
    if (val.cellular) j["cellular"] = *val.cellular;
    if (val.generic_vector) j["v"] = *val.generic_vector;
    if (!val.ring_hypotheses()) return j;
    HoroRing ring = k_horospherical(d);
    if (opt_.files.size() > 1) {
      json tj = in_.parse(opt_.files[1]);
      if (!tj.contains("components")) throw InputError("tuple file needs \"components\"");
      auto rep = ring.check(extended_from_json(ring.base, tj.at("components")));
      j["verdict"] = rep.verdict;
      j["failing_walls"] = rep.failing_walls;
    }
    auto q = ring.box_rank(box(2));
    j["box_rank"] = {{"radius", box(2)}, {"rank", q.rank()}, {"members", q.members}, {"ideal", q.ideal}};
    if (val.presentation_hypotheses()) {
      auto p = bundle_presentation(ring.fan, ring.base);
      j["presentation"] = presentation_to_json(ring.base, p.presentation);
      j["presentation_verified"] = p.verified;
    }
    return j;
  }

  json crosscheck() {
    if (opt_.hirzebruch < 0) throw InputError("crosscheck needs --hirzebruch a with a >= 0");
    auto rep = hirzebruch_crosscheck(opt_.hirzebruch, box(2), opt_.samples == 25 ? 100 : opt_.samples, opt_.seed);
    return {{"a", rep.a},
            {"radius", rep.radius},
            {"twist", rep.twist},
            {"samples", rep.samples},
            {"agreements", rep.agreements},
            {"members", rep.members},
            {"direct_rank", rep.direct_rank},
            {"extended_rank", rep.extended_rank},
            {"agree", rep.agree()}};
  }

  Options opt_;
  Inputs in_;
};

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_human(const json& r, std::ostream& out) {
  out << "ekt " << r.at("command").get<std::string>();
  if (r.contains("error")) {
    out << ": " << r["error"]["kind"].get<std::string>() << " error: " << r["error"]["message"].get<std::string>() << "\n";
    return;
  }
  out << " (seed " << r.at("seed") << ", inputs " << r.at("inputs").at("digest").get<std::string>().substr(0, 19)
      << ")\n";
  for (const auto& [k, v] : r.items()) {
    if (k == "schema" || k == "command" || k == "seed" || k == "inputs") continue;
    if (v.is_object()) {
      out << "  " << k << ":\n";
      for (const auto& [k2, v2] : v.items()) out << "    " << k2 << ": " << scalar(v2) << "\n";
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << "  " << k << ": " << v.size() << " entries\n";
      for (const auto& e : v) out << "    - " << e.dump() << "\n";
    } else {
      out << "  " << k << ": " << scalar(v) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant K-rings of cellular toric varieties, toric bundles and horospherical embeddings"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check the fan axioms and report violations with witnesses"},
      {"complete", "decide whether the fan covers the whole space"},
      {"cellular", "cellularity verdict, cell order, distinguished faces and cell dimensions"},
      {"gkm-check", "wall congruence membership of a tuple file"},
      {"plp-check", "piecewise Laurent polynomial membership of a tuple file"},
      {"basis", "triangular basis along the cell order"},
      {"rank", "rank of the ordinary K-ring from truncated models"},
      {"sr", "Stanley-Reisner presentation and its checks"},
      {"bundle", "extended ring of a toric bundle: fiber fan, base description, optional tuple"},
      {"horo", "toroidal horospherical embedding datum, optional tuple"},
      {"crosscheck", "Hirzebruch surface computed directly and as a bundle"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", opt.files, "input JSON files");
    sub->add_option("--seed", opt.seed, "seed for randomized probes");
    sub->add_option("--box", opt.box, "box radius for truncated models");
    sub->add_option("--v", opt.v, "generic vector, comma separated");
    sub->add_flag("--trust-fan", opt.trust_fan, "skip fan validation");
    sub->add_option("--format", opt.format, "json or human")->check(CLI::IsMember({"json", "human"}));
    sub->add_flag("--timings", opt.timings, "include wall clock timings");
    sub->add_option("--samples", opt.samples, "number of random samples");
    sub->add_option("--degree", opt.degree, "monomial degree bound for sr");
    if (name == "crosscheck") sub->add_option("--hirzebruch", opt.hirzebruch, "Hirzebruch parameter a");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  json report{{"schema", kSchema}, {"command", cmd}, {"seed", opt.seed}};
  Runner runner(opt);
  int code = 0;
  auto start = std::chrono::steady_clock::now();
  try {
    json result = runner.run(cmd);
    for (auto& [k, v] : result.items()) report[k] = v;
  } catch (const InputError& e) {
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = 2;
  } catch (const Inconclusive& e) {
    report["error"] = {{"kind", "inconclusive"}, {"message", e.what()}};
    code = 3;
  } catch (const std::overflow_error& e) {
    report["error"] = {{"kind", "input"}, {"message", std::string("value out of range: ") + e.what()}};
    code = 2;
  }
  report["inputs"] = {{"files", runner.inputs().names}, {"digest", runner.inputs().digest()}};
  if (opt.timings)
    report["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
  if (opt.format == "human")
    print_human(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  if (code != 0) std::cerr << "ekt: " << report["error"]["message"].get<std::string>() << "\n";
  return code;
}
