#include "ihlab/cli.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <random>
#include <json.hpp>

#include "ihlab/errors.hpp"
#include "ihlab/io.hpp"
#include "ihlab/lie.hpp"
#include "ihlab/perverse.hpp"
#include "ihlab/sl2.hpp"
#include "ihlab/verbitsky.hpp"

namespace ihlab {

namespace {

using json = nlohmann::ordered_json;

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ScalarDomain resolve_domain(const RunConfig& cfg, std::size_t total_dim) {
  const std::uint64_t prime = prime_from_environment();
  if (!cfg.mode) return ScalarDomain::automatic(total_dim, prime);
  if (*cfg.mode == "exact") return ScalarDomain::exact();
  if (*cfg.mode == "modp") return ScalarDomain::modular(prime);
  throw InputError("--mode must be 'exact' or 'modp', got '" + *cfg.mode + "'");
}

json checks_json(const CheckReport& r) {
  json a = json::array();
  for (const auto& c : r.checks) a.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"witnesses", c.witnesses}});
  return a;
}

json meta_json(const RunConfig& cfg, const ScalarDomain& d, const std::string& digest) {
  json m;
  m["seed"] = cfg.seed;
  m["mode"] = d.name();
  m["prime"] = d.prime;
  m["model_digest"] = "sha256:" + digest;
  m["timestamp"] = cfg.timestamp.empty() ? utc_timestamp() : cfg.timestamp;
  return m;
}

std::string diamond_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.extension() == ".json") return p.replace_extension(".txt").string();
  return output + ".txt";
}

/// Writes the report and its diamond; returns the exit code for the report.
int emit(const RunConfig& cfg, json report, const CheckReport& checks, const std::string& diamond, std::ostream& out,
         std::ostream& err, int code_if_ok = kExitOk) {
  report["checks"] = checks_json(checks);
  const std::string text = report.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    out << text;
    if (!diamond.empty()) err << diamond;
  } else {
    write_file_atomic(cfg.output_path, text);
    if (!diamond.empty()) write_file_atomic(diamond_path(cfg.output_path), diamond);
  }
  if (!checks.ok()) {
    std::string names;
    for (const auto& f : checks.failures()) names += (names.empty() ? "" : ", ") + f;
    err << "failed checks: " << names << "\n";
    return kExitCheckFailed;
  }
  return code_if_ok;
}

RationalVector resolve_class(const RunConfig& cfg, const GradedAlgebraModel& m) {
  if (!cfg.class_spec) throw InputError("--class is required");
  const std::string& spec = *cfg.class_spec;
  if (spec.rfind("sample:", 0) == 0) {
    std::size_t k = 0;
    try {
      if (spec.size() == 7 || !std::isdigit(static_cast<unsigned char>(spec[7]))) throw std::invalid_argument("sign");
      std::size_t used = 0;
      k = std::stoul(spec.substr(7), &used);
      if (used != spec.size() - 7) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("--class sample:k needs a nonnegative integer k, got '" + spec + "'");
    }
    return sample_isotropic(m.lattice, cfg.seed, k + 1).at(k);
  }
  auto v = parse_class(spec);
  require_isotropic(m, v);
  return v;
}

json table_json(const NumberTable& t) { return json(t); }

std::optional<HodgeMarking> effective_marking(const GradedAlgebraModel& m) {
  if (m.marking) return m.marking;
  return marking_from_hyperbolic_pair(m.lattice);
}

CheckResult fujiki_entry(const GradedAlgebraModel& m, std::uint64_t seed, json& section) {
  try {
    auto fr = fujiki_check(m, seed);
    section["constant"] = format_rational(fr.constant);
    section["verified_samples"] = fr.verified_samples;
    section["determining_class"] = format_vector(fr.determining_class);
    if (fr.sigma_integral) section["sigma_sigmabar_integral"] = format_rational(*fr.sigma_integral);
    if (fr.sigma_normalized_constant) section["sigma_normalized_constant"] = format_rational(*fr.sigma_normalized_constant);
    return {"fujiki", Status::kPass, {"c = " + format_rational(fr.constant)}};
  } catch (const StructuralError& e) {
    return {"fujiki", Status::kFail, {e.what()}};
  }
}

// ---------------------------------------------------------------------------

int cmd_build_sh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.lattice.empty()) throw InputError("--lattice is required");
  if (cfg.n < 1) throw InputError("--n must be a positive integer");
  QuadraticLattice lattice;
  std::string name = cfg.lattice;
  std::string alias = cfg.lattice;
  int param = cfg.n;
  if (alias.rfind("k3n:", 0) == 0) {
    try {
      param = std::stoi(alias.substr(4));
    } catch (const std::exception&) {
      throw InputError("lattice alias k3n:<n> needs an integer, got '" + alias + "'");
    }
    alias = "k3n";
  }
  if (is_lattice_alias(alias)) {
    lattice = load_lattice_fixture(alias, param).lattice;
  } else {
    lattice = lattice_from_json_text(read_file(cfg.lattice));
    name = std::filesystem::path(cfg.lattice).stem().string();
  }
  auto model = build_sh(lattice, cfg.n, cfg.seed);
  model.name = name;
  const std::string text = model_to_json(model, true);
  if (cfg.output_path.empty())
    out << text;
  else
    write_file_atomic(cfg.output_path, text);
  err << "built " << model.name << " n=" << model.n << " dims (";
  for (std::size_t k = 0; k < model.dims.size(); ++k) err << (k ? "," : "") << model.dims[k];
  err << ")\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto mf = load_model(cfg.model_path, cfg.seed);
  const auto& m = mf.model;
  auto domain = resolve_domain(cfg, m.total_dim());
  CheckReport checks = validate_model(m, domain);
  json report;
  report["command"] = "validate";
  report["model"] = m.name;
  report["dims"] = m.dims;
  json fujiki;
  if (checks.ok()) checks.add(fujiki_entry(m, cfg.seed, fujiki));
  if (!fujiki.empty()) report["fujiki"] = fujiki;
  report["meta"] = meta_json(cfg, domain, mf.digest);
  return emit(cfg, report, checks, "", out, err);
}

int cmd_llv(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto mf = load_model(cfg.model_path, cfg.seed);
  const auto& m = mf.model;
  auto domain = resolve_domain(cfg, m.total_dim());
  auto res = llv_dimension(m, cfg.seed, domain, cfg.budget);
  json section;
  section["dimension"] = res.dimension;
  section["expected"] = res.expected;
  section["ambient"] = res.ambient;
  section["closed"] = res.closed;
  section["stabilized"] = res.stabilized;
  section["budget_exceeded"] = res.budget_exceeded;
  section["generators"] = res.generators;
  section["lefschetz_classes"] = res.lefschetz_classes;
  section["brackets"] = res.brackets;
  if (res.certification_mode) {
    section["certification_mode"] = *res.certification_mode;
    section["certified_dimension"] = *res.certified_dimension;
  }
  CheckReport checks;
  if (!res.conclusive()) {
    checks.add({"llv_closure", Status::kWarn,
                {res.budget_exceeded ? "inconclusive: budget exceeded" : "inconclusive: dimension did not stabilize"}});
  } else {
    checks.pass("llv_closure", {"dimension " + std::to_string(res.dimension)});
    const std::string w = "dim " + std::to_string(res.dimension) + ", so(b2+2) has dim " + std::to_string(res.expected);
    if (mf.builder_output)
      checks.record("llv_equals_so(b2+2)", res.dimension == res.expected, {w});
    else
      checks.add({"llv_equals_so(b2+2)", Status::kInfo, {w}});
    if (res.certified_dimension)
      checks.record("llv_certification", *res.certified_dimension == res.dimension,
                    {*res.certification_mode + " rerun gives " + std::to_string(*res.certified_dimension)});
  }
  json report;
  report["command"] = "llv";
  report["model"] = m.name;
  report["dims"] = m.dims;
  report["llv"] = section;
  report["meta"] = meta_json(cfg, domain, mf.digest);
  err << "llv: dimension " << res.dimension << " (expected " << res.expected << ") in " << res.seconds << " s\n";
  return emit(cfg, report, checks, "", out, err, res.conclusive() ? kExitOk : kExitInconclusive);
}

template <class F>
void perverse_sections(const Algebra<F>& alg, const RationalVector& gamma, json& report, CheckReport& checks,
                       NumberTable& table) {
  auto filt = perverse_filtration(alg, gamma);
  table = perverse_table(filt);
  report["perverse_table"] = table_json(table);
  checks.append(check_filtration_invariants(alg, filt));
  checks.append(check_graded_dimensions(table, alg.dims));
  checks.append(check_symmetry(table));
  checks.append(check_border(table));
}

int cmd_perverse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto mf = load_model(cfg.model_path, cfg.seed);
  const auto& m = mf.model;
  auto domain = resolve_domain(cfg, m.total_dim());
  auto gamma = resolve_class(cfg, m);
  json report;
  report["command"] = "perverse";
  report["model"] = m.name;
  report["dims"] = m.dims;
  report["class"] = format_vector(gamma);
  CheckReport checks;
  NumberTable table;
  std::optional<NumberTable> hodge;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        auto alg = Algebra<F>::from(f, m);
        perverse_sections(alg, gamma, report, checks, table);
        if (m.marking) hodge = hodge_numbers(alg, *m.marking);
      },
      make_field(domain));
  if (hodge) report["hodge_table"] = table_json(*hodge);
  report["meta"] = meta_json(cfg, domain, mf.digest);
  std::string diamond = render_diamond(table, "perverse numbers of " + m.name + ", class (" + format_vector(gamma) + ")");
  if (hodge) diamond += "\n" + render_diamond(*hodge, "Hodge numbers of " + m.name);
  return emit(cfg, report, checks, diamond, out, err);
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(cfg.model_path);
  auto lattice = lattice_from_json_text(text);
  if (cfg.count == 0) throw InputError("--count must be positive");
  auto samples = sample_isotropic(lattice, cfg.seed, cfg.count);
  json report;
  report["command"] = "sample-isotropic";
  json list = json::array();
  CheckReport checks;
  std::vector<std::string> bad;
  for (const auto& s : samples) {
    json v = json::array();
    for (const auto& x : s) v.push_back(format_rational(x));
    list.push_back(v);
    if (lattice.q(s) != 0) bad.push_back(format_vector(s));
  }
  checks.record("isotropic", bad.empty(), bad);
  report["samples"] = list;
  report["meta"] = meta_json(cfg, ScalarDomain::exact(), sha256_hex(text));
  return emit(cfg, report, checks, "", out, err);
}

template <class F>
void check_all_sections(const RunConfig& cfg, const GradedAlgebraModel& m, const Algebra<F>& alg, json& report,
                        CheckReport& checks, NumberTable& table, std::optional<NumberTable>& hodge) {
  const auto& lat = m.lattice;
  auto samples = sample_isotropic(lat, cfg.seed, 12);
  const auto& gamma = samples[0];
  report["class"] = format_vector(gamma);
  perverse_sections(alg, gamma, report, checks, table);
  checks.append(check_invariance(alg, gamma, samples[1]));

  std::optional<RationalVector> partner;
  for (std::size_t i = 1; i < samples.size() && !partner; ++i)
    if (lat.pair(gamma, samples[i]) != 0) partner = samples[i];
  if (partner) {
    checks.append(check_lefschetz_pair(alg, gamma, *partner));
  } else {
    checks.add({"lefschetz_pair_i", Status::kSkipped, {"no sampled partner with nonzero pairing"}});
  }
  auto self = lefschetz_pair(alg, gamma, gamma);
  checks.add({"lefschetz_pair_self_ii", Status::kInfo,
              self.property_ii ? std::vector<std::string>{"(ii) holds for (gamma, gamma)"} : self.witnesses_ii});

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<RationalVector> classes(samples.begin(), samples.begin() + 4);
  for (int s = 0; s < 20; ++s) {
    RationalVector a(lat.b2());
    for (auto& x : a) x = coeff(rng);
    classes.push_back(a);
  }
  checks.append(lefschetz_criterion_check(alg, classes));
  for (const auto& a : classes)
    if (lat.q(a) != 0 && is_lefschetz(alg, a)) {
      checks.append(check_sl2_relations(alg, sl2_triple(alg, a)));
      break;
    }

  if (auto marking = effective_marking(m)) {
    hodge = hodge_numbers(alg, *marking);
    report["hodge_table"] = table_json(*hodge);
    checks.append(check_p0_claim(alg, *marking));
    checks.append(perverse_equals_hodge(alg, *marking, gamma));
  } else {
    checks.add({"p0_claim_span", Status::kSkipped, {"model has no Hodge marking and no hyperbolic pair"}});
    checks.add({"perverse_equals_hodge", Status::kSkipped, {"model has no Hodge marking and no hyperbolic pair"}});
  }
}

int cmd_check_all(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto mf = load_model(cfg.model_path, cfg.seed);
  const auto& m = mf.model;
  auto domain = resolve_domain(cfg, m.total_dim());
  json report;
  report["command"] = "check-all";
  report["model"] = m.name;
  report["dims"] = m.dims;
  CheckReport checks = validate_model(m, domain);
  NumberTable table;
  std::optional<NumberTable> hodge;
  if (checks.ok()) {
    json fujiki;
    checks.add(fujiki_entry(m, cfg.seed, fujiki));
    report["fujiki"] = fujiki;
    std::visit(
        [&](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          auto alg = Algebra<F>::from(f, m);
          check_all_sections(cfg, m, alg, report, checks, table, hodge);
        },
        make_field(domain));
  }
  report["meta"] = meta_json(cfg, domain, mf.digest);
  std::string diamond;
  if (!table.empty()) diamond = render_diamond(table, "perverse numbers of " + m.name);
  if (hodge) diamond += "\n" + render_diamond(*hodge, "Hodge numbers of " + m.name);
  return emit(cfg, report, checks, diamond, out, err);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "build-sh") return cmd_build_sh(cfg, out, err);
    if (cfg.model_path.empty()) throw InputError(cfg.command + ": a model file is required");
    if (cfg.command == "validate") return cmd_validate(cfg, out, err);
    if (cfg.command == "llv") return cmd_llv(cfg, out, err);
    if (cfg.command == "perverse") return cmd_perverse(cfg, out, err);
    if (cfg.command == "sample-isotropic") return cmd_sample(cfg, out, err);
    if (cfg.command == "check-all") return cmd_check_all(cfg, out, err);
    throw InputError("unknown command '" + cfg.command + "'");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ArithmeticObstruction& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitInputError;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace ihlab
