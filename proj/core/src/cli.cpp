#include "mforge/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mforge/eaa.hpp"
#include "mforge/identities.hpp"
#include "mforge/iolib.hpp"
#include "mforge/loop.hpp"
#include "mforge/toral.hpp"
#include "mforge/version.hpp"

namespace mforge {

namespace {

StructureAlgebra load_subject(const std::string& subject) {
  if (subject.rfind("builtin:", 0) == 0) return builtin(subject.substr(8));
  std::ifstream file(subject);
  if (!file) throw std::invalid_argument("cannot open '" + subject + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_algebra(buf.str());
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("MALCEV_FORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void emit(CheckReport& report, const std::string& format, std::ostream& out,
          int64_t elapsed_ms) {
  report.elapsed_ms = elapsed_ms;
  if (format == "json") {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << report.to_human();
  }
}

// toral pair + decomposition + quadratic structure, with structural failures
// reported as a Fail item instead of a thrown exception
struct PairOrFailure {
  std::optional<RootDatum> datum;
  std::optional<QuadraticToralPair> qpair;
  std::optional<CheckItem> failure;
};

PairOrFailure build_pair(const StructureAlgebra& alg, bool quadratic) {
  PairOrFailure out;
  auto fail = [&](const std::string& name, const std::string& details) {
    CheckItem item;
    item.name = name;
    item.status = Status::Fail;
    item.details = details;
    out.failure = std::move(item);
  };
  if (alg.toral_rows.empty()) {
    fail("toral_data", "the subject declares no toral rows; nothing to decompose");
    return out;
  }
  try {
    std::vector<Elem> h;
    for (const auto& row : alg.toral_rows) h.push_back(from_vec(row));
    out.datum = decompose(make_toral_pair(alg, h));
  } catch (const DecomposeError& e) {
    fail("decomposition", e.what());
    return out;
  } catch (const std::invalid_argument& e) {
    fail("toral_pair", e.what());
    return out;
  }
  if (quadratic) {
    try {
      out.qpair = make_quadratic_pair(*out.datum);
    } catch (const std::invalid_argument& e) {
      fail("form_gate", e.what());
      out.datum.reset();
    }
  }
  return out;
}

nlohmann::ordered_json decomposition_data(const RootDatum& datum) {
  nlohmann::ordered_json spaces = nlohmann::ordered_json::array();
  for (const auto& space : datum.spaces) {
    nlohmann::ordered_json entry;
    entry["root"] = root_str(space.root);
    entry["dim"] = space.basis.size();
    nlohmann::ordered_json degrees;
    for (const auto& [deg, basis] : space.by_degree)
      degrees[std::to_string(deg)] = basis.size();
    entry["degrees"] = std::move(degrees);
    spaces.push_back(std::move(entry));
  }
  nlohmann::ordered_json data;
  data["h_dim"] = datum.pair.h.size();
  data["spaces"] = std::move(spaces);
  return data;
}

int cmd_identities(const StructureAlgebra& alg, const std::string& subject,
                   const std::string& identity, const std::string& mode, uint64_t seed,
                   int count, int threads, const std::string& format, std::ostream& out,
                   std::ostream& err) {
  const auto id = identity_by_name(identity);
  if (!id) {
    err << "unknown identity '" << identity << "'\n";
    return 3;
  }
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.subject = subject;
  if (mode == "sampled") {
    report.command = "identities --identity " + identity + " --mode sampled --seed " +
                     std::to_string(seed) + " --count " + std::to_string(count);
    report.seed = seed;
    SampleParams sp;
    sp.seed = seed;
    sp.count = count;
    report.items.push_back(check_identity(alg, *id, CheckMode::Sampled, sp, threads));
  } else {
    report.command = "identities --identity " + identity + " --mode exhaustive";
    try {
      report.items.push_back(
          check_identity(alg, *id, CheckMode::Exhaustive, {}, threads));
    } catch (const std::invalid_argument& e) {
      err << e.what() << "\n";
      return 3;
    }
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_form(const StructureAlgebra& alg, const std::string& subject, int threads,
             const std::string& format, std::ostream& out, std::ostream& err) {
  if (!alg.gram) {
    err << "subject has no form\n";
    return 3;
  }
  const auto start = std::chrono::steady_clock::now();
  CheckReport report = check_form(alg, threads);
  report.command = "form";
  report.subject = subject;
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_decompose(const StructureAlgebra& alg, const std::string& subject, int threads,
                  const std::string& format, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.command = "decompose";
  report.subject = subject;
  PairOrFailure pf = build_pair(alg, false);
  if (pf.failure) {
    report.items.push_back(std::move(*pf.failure));
  } else {
    const RootDatum& datum = *pf.datum;
    CheckItem head;
    head.name = "decomposition";
    head.data = decomposition_data(datum);
    head.details = std::to_string(datum.spaces.size()) + " root spaces over an H of "
                   "dimension " + std::to_string(datum.pair.h.size());
    report.items.push_back(std::move(head));
    CheckReport toral = verify_toral(datum);
    for (auto& item : toral.items) report.items.push_back(std::move(item));
    report.items.push_back(check_root_symmetry(datum));
    CheckReport grading = check_partial_grading(datum, threads);
    for (auto& item : grading.items) report.items.push_back(std::move(item));
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_eaa(const StructureAlgebra& alg, const std::string& subject, int budget,
            const std::string& format, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const uint64_t seed = 0;
  CheckReport report;
  report.command = "eaa --budget " + std::to_string(budget);
  report.subject = subject;
  PairOrFailure pf = build_pair(alg, true);
  if (pf.failure) {
    report.items.push_back(std::move(*pf.failure));
  } else {
    const QuadraticToralPair& q = *pf.qpair;
    CheckReport e1 = check_E1(q, budget, seed);
    const bool sampled_paths = true;
    for (auto& item : e1.items) report.items.push_back(std::move(item));
    // block identities on the pairs E1 found (same seeds, hence same pairs)
    if (q.h_nondegenerate) {
      for (int b : alg.grading.elements())
        for (const Root& alpha : root_support(*pf.datum, b)) {
          if (alpha.zero()) continue;
          const uint64_t root_seed =
              seed ^ static_cast<uint64_t>(pf.datum->root_index(alpha));
          const auto outcome = find_test_pair(q, alpha, b, budget, root_seed);
          if (outcome.witness)
            report.items.push_back(check_block_identity(q, *outcome.witness));
        }
      report.items.push_back(check_E2prime(q));
    } else {
      report.items.push_back(check_E2_sampled(q, budget, seed));
    }
    CheckReport e3 = check_E3(q);
    for (auto& item : e3.items) report.items.push_back(std::move(item));
    if (sampled_paths) report.seed = seed;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_core(const StructureAlgebra& alg, const std::string& subject,
             const std::string& format, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const int budget = 500;
  const uint64_t seed = 0;
  CheckReport report;
  report.command = "core";
  report.subject = subject;
  PairOrFailure pf = build_pair(alg, true);
  if (pf.failure) {
    report.items.push_back(std::move(*pf.failure));
  } else {
    const QuadraticToralPair& q = *pf.qpair;
    const CoreResult core = compute_core(q, budget, seed);
    CheckItem cls;
    cls.name = "classification";
    {
      nlohmann::ordered_json noniso = nlohmann::ordered_json::array();
      for (const auto& r : core.classification.nonisotropic) noniso.push_back(root_str(r));
      nlohmann::ordered_json iso = nlohmann::ordered_json::array();
      for (const auto& r : core.classification.isotropic) iso.push_back(root_str(r));
      cls.data["nonisotropic"] = std::move(noniso);
      cls.data["isotropic"] = std::move(iso);
      cls.data["exact"] = core.classification.exact;
    }
    cls.details = core.classification.exact
                      ? "pairing-based classification (exact)"
                      : "budgeted classification; isotropy is as-observed";
    report.items.push_back(std::move(cls));
    CheckItem body;
    body.name = "core";
    body.data["dim"] = core.core_basis.size();
    body.data["hc_dim"] = core.hc_basis.size();
    {
      nlohmann::ordered_json basis = nlohmann::ordered_json::array();
      for (const auto& e : core.core_basis) basis.push_back(render_elem(alg, e));
      body.data["basis"] = std::move(basis);
      nlohmann::ordered_json hc = nlohmann::ordered_json::array();
      for (const auto& e : core.hc_basis) hc.push_back(render_elem(alg, e));
      body.data["hc_basis"] = std::move(hc);
    }
    body.details = "subalgebra generated by the nonisotropic root spaces";
    report.items.push_back(std::move(body));
    CheckReport verify = verify_core_pair(q, budget, seed);
    for (auto& item : verify.items) report.items.push_back(std::move(item));
    report.seed = seed;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_affinize(const StructureAlgebra& alg, const std::string& subject,
                 const std::string& flavor_str, int rank, std::string cocycle_str,
                 int box, const std::string& check, int threads,
                 const std::string& format, std::ostream& out, std::ostream& err) {
  if (rank < 1) {
    err << "--rank must be at least 1\n";
    return 3;
  }
  if (box < 0) {
    err << "--box must be nonnegative\n";
    return 3;
  }
  LoopFlavor flavor;
  if (flavor_str == "plain") {
    flavor = LoopFlavor::Plain;
  } else if (flavor_str == "tilde") {
    flavor = LoopFlavor::Tilde;
  } else if (flavor_str == "hat") {
    flavor = LoopFlavor::Hat;
  } else {
    err << "unknown flavor '" << flavor_str << "'\n";
    return 3;
  }
  Mat q;
  const size_t nu = static_cast<size_t>(rank);
  if (cocycle_str.empty()) {
    q = Mat(nu, Vec(nu, Rat(1)));
  } else {
    std::vector<Rat> entries;
    std::stringstream ss(cocycle_str);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        entries.push_back(parse_rat(piece));
      } catch (const std::exception& e) {
        err << "bad cocycle entry '" << piece << "': " << e.what() << "\n";
        return 3;
      }
    }
    if (entries.size() != nu * nu) {
      err << "--cocycle needs " << nu * nu << " entries (row-major " << nu << "x" << nu
          << " matrix), got " << entries.size() << "\n";
      return 3;
    }
    q = zero_mat(nu, nu);
    for (size_t i = 0; i < nu; ++i)
      for (size_t j = 0; j < nu; ++j) q[i][j] = entries[i * nu + j];
  }

  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.subject = subject;
  {
    std::string echo;
    for (size_t i = 0; i < nu; ++i)
      for (size_t j = 0; j < nu; ++j)
        echo += (echo.empty() ? "" : ",") + rat_str(q[i][j]);
    report.command = "affinize --flavor " + flavor_str + " --rank " +
                     std::to_string(rank) + " --cocycle " + echo + " --box " +
                     std::to_string(box) + " --check " + check;
  }
  std::optional<LoopAlgebra> la;
  try {
    la = make_loop(alg, make_cocycle(std::move(q)), flavor);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 3;
  }
  if (check == "eaa") {
    CheckReport inner = check_eaa_loop(*la, box, 500, 0);
    report.seed = inner.seed;
    report.items = std::move(inner.items);
  } else {
    const auto id = identity_by_name(check);
    if (!id) {
      err << "--check expects an identity name or 'eaa'; got '" << check << "'\n";
      return 3;
    }
    try {
      CheckReport inner = check_loop_identity(*la, *id, box, threads);
      report.items = std::move(inner.items);
    } catch (const std::invalid_argument& e) {
      err << e.what() << "\n";
      return 3;
    }
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

int cmd_obstruction(const StructureAlgebra& alg, const std::string& subject, int threads,
                    const std::string& format, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.command = "obstruction";
  report.subject = subject;
  try {
    CheckReport inner = malcev_obstruction(alg, threads);
    report.items = std::move(inner.items);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 3;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  emit(report, format, out, ms);
  return report.exit_code();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact structure-constant checker for graded nonassociative algebras"};
  app.fallthrough();
  std::string format = "human";
  int threads_flag = 0;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "json"}));
  app.add_option("--threads", threads_flag, "worker threads (default: machine)");

  std::string subject, identity, mode = "exhaustive", flavor, check, cocycle;
  uint64_t seed = 0;
  int count = 200, budget = 500, rank = 1, box = 1;

  CLI::App* c_ident = app.add_subcommand("identities", "check one identity");
  c_ident->add_option("subject", subject)->required();
  c_ident->add_option("--identity", identity, "identity name")->required();
  c_ident->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  c_ident->add_option("--seed", seed);
  c_ident->add_option("--count", count);

  CLI::App* c_form = app.add_subcommand("form", "check the bilinear form");
  c_form->add_option("subject", subject)->required();

  CLI::App* c_dec = app.add_subcommand("decompose", "root space decomposition");
  c_dec->add_option("subject", subject)->required();

  CLI::App* c_eaa = app.add_subcommand("eaa", "extended-algebra axioms");
  c_eaa->add_option("subject", subject)->required();
  c_eaa->add_option("--budget", budget);

  CLI::App* c_core = app.add_subcommand("core", "nonisotropic core");
  c_core->add_option("subject", subject)->required();

  CLI::App* c_aff = app.add_subcommand("affinize", "loop construction checks");
  c_aff->add_option("subject", subject)->required();
  c_aff->add_option("--flavor", flavor)->required()
      ->check(CLI::IsMember({"plain", "tilde", "hat"}));
  c_aff->add_option("--rank", rank);
  c_aff->add_option("--cocycle", cocycle);
  c_aff->add_option("--box", box);
  c_aff->add_option("--check", check, "identity name or 'eaa'")->required();

  CLI::App* c_obs = app.add_subcommand("obstruction", "affinization predictions");
  c_obs->add_option("subject", subject)->required();

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("malcev-forge");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 3;
  }

  const int threads = resolve_threads(threads_flag);
  StructureAlgebra alg;
  try {
    alg = load_subject(subject);
  } catch (const ParseError& e) {
    err << subject << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }

  try {
    if (c_ident->parsed())
      return cmd_identities(alg, subject, identity, mode, seed, count, threads, format,
                            out, err);
    if (c_form->parsed()) return cmd_form(alg, subject, threads, format, out, err);
    if (c_dec->parsed()) return cmd_decompose(alg, subject, threads, format, out);
    if (c_eaa->parsed()) return cmd_eaa(alg, subject, budget, format, out);
    if (c_core->parsed()) return cmd_core(alg, subject, format, out);
    if (c_aff->parsed())
      return cmd_affinize(alg, subject, flavor, rank, cocycle, box, check, threads,
                          format, out, err);
    if (c_obs->parsed())
      return cmd_obstruction(alg, subject, threads, format, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "no subcommand\n";
  return 3;
}

}  // namespace mforge
