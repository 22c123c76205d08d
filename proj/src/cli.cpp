#include "tginv/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "tginv/fixtures.hpp"
#include "tginv/ginv.hpp"
#include "tginv/idem.hpp"
#include "tginv/io.hpp"
#include "tginv/spectra.hpp"

namespace tginv::cli {

using json = nlohmann::ordered_json;

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw FormatError("empty complex literal");
  const auto number = [&](const std::string& part, double unit) -> double {
    if (part.empty() || part == "+") return unit;
    if (part == "-") return -unit;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw FormatError("bad complex literal '" + raw + "'");
    }
    if (used != part.size()) throw FormatError("bad complex literal '" + raw + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return number(s, 1.0);
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(body, 1.0)};
  return {number(body.substr(0, split), 1.0), number(body.substr(split), 1.0)};
}

VectorXc parse_complex_list(const std::string& text) {
  std::vector<Complex> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(parse_complex(item));
  if (values.empty()) throw FormatError("empty vector literal");
  VectorXc v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

std::string strip_timestamp(const std::string& report) {
  static const std::regex field(R"re(\n?\s*"timestamp": "[^"]*",?)re");
  return std::regex_replace(report, field, "");
}

namespace {

struct Options {
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string branch = "principal";
  bool real = false;
  std::string output;
  std::size_t cap = 4096;
  std::vector<std::string> probes;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

BranchPolicy parse_policy(const Options& o) {
  BranchPolicy p;
  p.cap = o.cap;
  if (o.branch == "principal") {
    p.mode = BranchMode::principal;
  } else if (o.branch == "exists") {
    p.mode = BranchMode::exists;
  } else if (o.branch == "all") {
    p.mode = BranchMode::all;
  } else {
    throw CLI::ValidationError("--branch", "expected principal, exists or all");
  }
  return p;
}

VerificationSpec make_spec(const Options& o, GinvKind kind = GinvKind::one) {
  VerificationSpec spec;
  spec.kind = kind;
  spec.samples = o.samples;
  spec.tol = o.tol;
  spec.seed = o.seed;
  spec.sampling = o.real ? Sampling::real_box : Sampling::complex_box;
  spec.policy = parse_policy(o);
  for (const auto& p : o.probes) spec.probes.push_back(parse_complex_list(p));
  return spec;
}

json header(const std::string& command, const Options& o) {
  return {{"command", command}, {"seed", o.seed}, {"timestamp", timestamp()}};
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw FormatError("cannot write '" + o.output + "'");
  file << text;
}

int emit_report(json report, const Options& o, std::ostream& out) {
  emit(report.dump(2) + "\n", o, out);
  return report.value("pass", true) ? kPass : kFail;
}

int emit_tensor(const Tensor& t, const Options& o, std::ostream& out) {
  emit(tensor_to_json(t), o, out);
  return kPass;
}

GinvKind parse_kind(const std::string& k) {
  if (k == "1") return GinvKind::one;
  if (k == "2") return GinvKind::two;
  if (k == "5") return GinvKind::five;
  if (k == "group") return GinvKind::group;
  throw CLI::ValidationError("--kind", "expected 1, 2, 5 or group");
}

DiagonalSpec<Complex> diagonal_input(const std::string& file, const std::string& diag, int order) {
  if (!file.empty()) {
    const auto d = as_diagonal(read_tensor_file(file));
    if (!d) throw ShapeError(file + ": tensor is not diagonal");
    return *d;
  }
  if (diag.empty()) throw CLI::ValidationError("--diag", "give --a FILE or --diag LIST");
  return DiagonalSpec<Complex>{order, parse_complex_list(diag)};
}

/// The worked-example audit: every check with the verdict the oracle predicts.
json paper_audit(const Options& o) {
  using namespace fixtures;
  json checks = json::array();
  bool agrees = true;
  const auto record = [&](const std::string& name, bool expected, bool observed, json detail) {
    agrees = agrees && expected == observed;
    checks.push_back({{"name", name}, {"expected_pass", expected}, {"observed_pass", observed},
                      {"agrees", expected == observed}, {"detail", std::move(detail)}});
  };
  VerificationSpec spec;
  spec.seed = o.seed;
  spec.tol = 1e-9;

  VerificationSpec s = spec;
  s.policy.mode = BranchMode::exists;
  auto r = verify_inverse(ex41_A(), ex41_B_printed(), s);
  record("ex41 printed B, kind one, exists", false, r.pass, to_json(r));

  s = spec;
  s.samples = 1000;
  s.tol = 1e-10;
  s.policy.mode = BranchMode::all;
  for (GinvKind k : {GinvKind::one, GinvKind::two}) {
    s.kind = k;
    r = verify_inverse(ex41_A(), ex41_Bfix(), s);
    r.branches.clear();
    r.residuals.clear();
    record(std::string("ex41 corrected B, kind ") + to_string(k) + ", all", true, r.pass, to_json(r));
  }

  s = spec;
  s.samples = 1000;
  auto idem = is_idempotent(ex42_A(), s);
  idem.check.branches.clear();
  record("ex42 A idempotent, principal", true, idem.pass(), to_json(idem));
  s.samples = 100;
  s.policy.mode = BranchMode::all;
  idem = is_idempotent(ex42_A(), s);
  record("ex42 A idempotent, all", false, idem.pass(), to_json(idem));

  s = spec;
  s.samples = 1000;
  idem = is_idempotent(ex42_B(), s);
  idem.check.branches.clear();
  record("ex42 B idempotent, principal", true, idem.pass(), to_json(idem));
  s.samples = 100;
  s.probes = {VectorXc{{1.0, 1.0}}};
  for (BranchMode mode : {BranchMode::exists, BranchMode::all}) {
    s.policy.mode = mode;
    idem = is_k_t_idempotent(ex42_B(), 2, s);
    record(std::string("ex42 B 2-T-idempotent, ") + to_string(mode), false, idem.pass(), to_json(idem));
  }

  for (const auto& [name, a] : {std::pair{std::string("ex42 A"), ex42_A()}, {std::string("ex42 B"), ex42_B()}}) {
    const auto rep = spectrum_theorem_check(a, SpectrumClaim::idempotent_01);
    record(name + " eigenvalues in {0, 1}", false, rep.pass, to_json(rep));
  }

  json report = {{"command", "audit"}, {"seed", o.seed}, {"timestamp", timestamp()}};
  report["checks"] = checks;
  report["pass"] = agrees;
  return report;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("TGINV_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "tginv: TGINV_SEED is not an unsigned integer\n";
      return kUsage;
    }
  }

  CLI::App app{"Generalized inverses, idempotence and spectra of dense complex tensors", "tginv"};
  app.require_subcommand(1);
  const auto common = [&](CLI::App* c, bool sampling) {
    c->add_option("--output", o.output, "Write the report here instead of stdout");
    c->add_option("--tol", o.tol, "Relative residual tolerance")->capture_default_str();
    if (!sampling) return;
    c->add_option("--samples", o.samples, "Random samples")->capture_default_str()->check(CLI::NonNegativeNumber);
    c->add_option("--seed", o.seed, "RNG seed (default: TGINV_SEED or 0)");
    c->add_option("--branch", o.branch, "principal | exists | all")->capture_default_str();
    c->add_flag("--real", o.real, "Sample real vectors");
    c->add_option("--cap", o.cap, "Largest number of root assignments to enumerate")->capture_default_str();
    c->add_option("--probe", o.probes, "Vector checked before the random samples (repeatable)");
  };

  std::string a_file, x_file, b_file, x_vec, b_vec, r_text = "1", kind = "1", diag, w_vec, ax_null;
  std::string g_file, g2_file, p_file, q_file, variant, lambdas, claim = "idempotent-01", dir = "fixtures";
  std::vector<std::string> alphas;
  int order = 3, k = 0, k_target = 3;
  Index m = 0, n = 0, dim = 2;
  std::string fill = "0";
  bool paper = false;

  auto* c_apply = app.add_subcommand("apply", "A . x^(t-1)");
  c_apply->add_option("--a", a_file)->required();
  c_apply->add_option("--x", x_vec, "Comma-separated complex vector")->required();
  common(c_apply, false);

  auto* c_product = app.add_subcommand("product", "General tensor product A B");
  c_product->add_option("--a", a_file)->required();
  c_product->add_option("--b", b_file)->required();
  common(c_product, false);

  auto* c_power = app.add_subcommand("power", "Hadamard power x^[r]");
  c_power->add_option("--x", x_vec)->required();
  c_power->add_option("--r", r_text, "Exponent p or p/q")->required();
  common(c_power, true);

  auto* c_make = app.add_subcommand("make", "Unit, diagonal or zero tensor");
  std::string make_kind;
  c_make->add_option("kind", make_kind)->required()->check(CLI::IsMember({"unit", "diag", "zero"}));
  c_make->add_option("--order", order)->capture_default_str();
  c_make->add_option("--dim", dim)->capture_default_str();
  c_make->add_option("--diag", diag);
  common(c_make, false);

  auto* c_ginv = app.add_subcommand("ginv", "Construct a generalized inverse");
  c_ginv->require_subcommand(1);
  auto* g_diag = c_ginv->add_subcommand("diag", "Diagonal {1}-inverse");
  auto* g_diag_group = c_ginv->add_subcommand("diag-group", "Diagonal group inverse");
  auto* g_order2 = c_ginv->add_subcommand("order2-diag", "Order-2 inverse of an invertible diagonal tensor");
  for (auto* c : {g_diag, g_diag_group, g_order2}) {
    c->add_option("--a", a_file, "Diagonal tensor file");
    c->add_option("--diag", diag, "Diagonal entries (with --order)");
    c->add_option("--order", order)->capture_default_str();
    if (c != g_order2) c->add_option("--k", k_target, "Order of the inverse")->capture_default_str();
    common(c, false);
  }
  auto* g_embed = c_ginv->add_subcommand("embed", "Pad a sub-tensor inverse");
  g_embed->add_option("--g", g_file)->required();
  g_embed->add_option("--m", m)->required();
  g_embed->add_option("--n", n)->required();
  g_embed->add_option("--fill", fill)->capture_default_str();
  g_embed->add_option("--pad", variant, "row | column (checks the partition)");
  common(g_embed, false);
  auto* g_block = c_ginv->add_subcommand("block", "Block-diagonal inverse diag(G1, G2)");
  g_block->add_option("--g1", g_file)->required();
  g_block->add_option("--g2", g2_file)->required();
  g_block->add_option("--variant", variant, "one | group")->check(CLI::IsMember({"one", "group"}));
  common(g_block, false);
  auto* g_transform = c_ginv->add_subcommand("transform", "Q^(kind) G P^T");
  g_transform->add_option("--p", p_file, "Permutation matrix (order-2 tensor file)")->required();
  g_transform->add_option("--g", g_file)->required();
  g_transform->add_option("--q", q_file, "Full-row-rank matrix (order-2 tensor file)")->required();
  g_transform->add_option("--kind", kind, "1 | 2")->capture_default_str()->check(CLI::IsMember({"1", "2"}));
  common(g_transform, false);
  auto* g_rank = c_ginv->add_subcommand("rankdecomp", "Inverse of a rank decomposition");
  g_rank->add_option("--lambdas", lambdas)->required();
  g_rank->add_option("--alpha", alphas, "One vector per weight (repeatable)")->required();
  g_rank->add_option("--m", m)->required();
  g_rank->add_option("--order", order)->capture_default_str();
  g_rank->add_option("--k", k_target)->capture_default_str();
  g_rank->add_option("--kind", kind, "1 | 2")->capture_default_str()->check(CLI::IsMember({"1", "2"}));
  common(g_rank, false);

  auto* c_verify = app.add_subcommand("verify", "Check X against the {1}/{2}/{5}/group identities");
  c_verify->add_option("--kind", kind, "1 | 2 | 5 | group")->capture_default_str();
  c_verify->add_option("--a", a_file)->required();
  c_verify->add_option("--x", x_file)->required();
  common(c_verify, true);

  auto* c_solve = app.add_subcommand("solve", "x = X . (b^[1/s])^(k-1)");
  c_solve->add_option("--a", a_file)->required();
  c_solve->add_option("--x", x_file)->required();
  c_solve->add_option("--b", b_vec)->required();
  common(c_solve, false);

  auto* c_idem = app.add_subcommand("idem", "Idempotence, or k-T-idempotence with --k");
  c_idem->add_option("--a", a_file)->required();
  c_idem->add_option("--k", k, "Check k-T-idempotence (k >= 2)");
  common(c_idem, true);

  auto* c_eig2 = app.add_subcommand("eig2", "All eigenpairs of a 2 x 2^(t-1) tensor");
  c_eig2->add_option("--a", a_file)->required();
  common(c_eig2, false);

  auto* c_audit = app.add_subcommand("audit", "Spectral claim check, or the worked-example audit");
  c_audit->add_option("--a", a_file);
  c_audit->add_option("--claim", claim, "idempotent-01 | kT-roots | matrix-k-idempotent")
      ->capture_default_str()
      ->check(CLI::IsMember({"idempotent-01", "kT-roots", "matrix-k-idempotent"}));
  c_audit->add_option("--k", k_target, "k for kT-roots / matrix-k-idempotent")->capture_default_str();
  c_audit->add_flag("--paper", paper, "Run the bundled worked-example audit");
  common(c_audit, true);

  auto* c_null = app.add_subcommand("nullchain", "Null-space chains for an inverse");
  c_null->add_option("--a", a_file)->required();
  c_null->add_option("--x", x_file)->required();
  c_null->add_option("--w", w_vec, "Vector in N(A)")->required();
  c_null->add_option("--chains", variant, "two | five | both")->check(CLI::IsMember({"two", "five", "both"}));
  c_null->add_option("--ax-null", ax_null, "Vector in N(AX) for chain (6)");
  common(c_null, false);

  auto* c_fixtures = app.add_subcommand("fixtures", "Write the bundled tensors");
  c_fixtures->add_option("--dir", dir)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*c_apply) {
      const Tensor a = read_tensor_file(a_file);
      json r = header("apply", o);
      r["result"] = to_json(VectorXc(tginv::apply(a, parse_complex_list(x_vec))));
      return emit_report(r, o, out);
    }
    if (*c_product) {
      return emit_tensor(general_product(read_tensor_file(a_file), read_tensor_file(b_file)), o, out);
    }
    if (*c_power) {
      const auto slash = r_text.find('/');
      const Rational r = slash == std::string::npos
                             ? Rational(std::stoll(r_text))
                             : Rational(std::stoll(r_text.substr(0, slash)), std::stoll(r_text.substr(slash + 1)));
      json rep = header("power", o);
      rep["exponent"] = r.to_string();
      rep["branch_policy"] = to_json(parse_policy(o));
      json values = json::array();
      for (const auto& v : hadamard_power(parse_complex_list(x_vec), r, parse_policy(o))) values.push_back(to_json(v));
      rep["values"] = values;
      return emit_report(rep, o, out);
    }
    if (*c_make) {
      if (make_kind == "unit") return emit_tensor(unit_tensor(order, dim), o, out);
      if (make_kind == "zero") return emit_tensor(Tensor::zero(Shape::square(order, dim)), o, out);
      const VectorXc d = parse_complex_list(diag);
      return emit_tensor(make_special(SpecialKind::diagonal, order, d.size(), std::optional<VectorXc>(d)), o, out);
    }
    if (*c_ginv) {
      if (*g_diag) return emit_tensor(diag_one_inverse(diagonal_input(a_file, diag, order), k_target), o, out);
      if (*g_diag_group) return emit_tensor(diag_group_inverse(diagonal_input(a_file, diag, order), k_target), o, out);
      if (*g_order2) return emit_tensor(order2_inverse_of_diagonal(diagonal_input(a_file, diag, order)), o, out);
      if (*g_embed) {
        const Tensor g = read_tensor_file(g_file);
        const Complex f = parse_complex(fill);
        if (variant == "row") return emit_tensor(block_padding_inverse(g, PaddingVariant::row, m, n, f), o, out);
        if (variant == "column") return emit_tensor(block_padding_inverse(g, PaddingVariant::column, m, n, f), o, out);
        return emit_tensor(embed_one_inverse(g, m, n, f), o, out);
      }
      if (*g_block) {
        return emit_tensor(diag_block_inverse(read_tensor_file(g_file), read_tensor_file(g2_file),
                                              variant == "group" ? BlockVariant::group : BlockVariant::one),
                           o, out);
      }
      const auto mkind = kind == "2" ? MatrixInverseKind::two : MatrixInverseKind::one;
      if (*g_transform) {
        return emit_tensor(transform_inverse(read_tensor_file(p_file).to_matrix(), read_tensor_file(g_file),
                                             read_tensor_file(q_file).to_matrix(), mkind),
                           o, out);
      }
      std::vector<VectorXc> alpha_vectors;
      for (const auto& a : alphas) alpha_vectors.push_back(parse_complex_list(a));
      return emit_tensor(rank_decomp_ginv(parse_complex_list(lambdas), alpha_vectors, m, order, mkind, k_target), o, out);
    }
    if (*c_verify) {
      const GinvKind gk = parse_kind(kind);
      const auto rep = verify_inverse(read_tensor_file(a_file), read_tensor_file(x_file), make_spec(o, gk));
      json r = header("verify", o);
      r["kind"] = to_string(gk);
      r.update(to_json(rep));
      return emit_report(r, o, out);
    }
    if (*c_solve) {
      const auto res = solve_via_ginv(read_tensor_file(a_file), read_tensor_file(x_file), parse_complex_list(b_vec));
      json r = header("solve", o);
      r["x"] = to_json(res.x);
      r["residual"] = res.residual;
      r["tol"] = o.tol;
      r["pass"] = res.residual <= o.tol;
      return emit_report(r, o, out);
    }
    if (*c_idem) {
      const Tensor a = read_tensor_file(a_file);
      const auto rep = k > 0 ? is_k_t_idempotent(a, k, make_spec(o)) : is_idempotent(a, make_spec(o));
      json r = header("idem", o);
      r.update(to_json(rep));
      return emit_report(r, o, out);
    }
    if (*c_eig2) {
      const auto spectrum = eigenvalues_dim2(read_tensor_file(a_file));
      json r = header("eig2", o);
      json pairs = json::array(), values = json::array();
      for (const auto& p : spectrum.pairs) {
        pairs.push_back(to_json(p));
        values.push_back(to_json(p.lambda));
      }
      r["continuum"] = spectrum.continuum;
      r["eigenvalues"] = values;
      r["eigenpairs"] = pairs;
      r["pass"] = true;
      return emit_report(r, o, out);
    }
    if (*c_audit) {
      if (paper) return emit_report(paper_audit(o), o, out);
      if (a_file.empty()) throw CLI::ValidationError("--a", "give --a FILE or --paper");
      const SpectrumClaim c = claim == "kT-roots"              ? SpectrumClaim::kt_roots
                              : claim == "matrix-k-idempotent" ? SpectrumClaim::matrix_k_idempotent
                                                               : SpectrumClaim::idempotent_01;
      json r = header("audit", o);
      r.update(to_json(spectrum_theorem_check(read_tensor_file(a_file), c, k_target)));
      return emit_report(r, o, out);
    }
    if (*c_null) {
      const Tensor a = read_tensor_file(a_file);
      const NullWitness w = NullWitness::certify(a, parse_complex_list(w_vec), o.tol);
      const NullChains chains = variant == "two" ? NullChains::two : variant == "five" ? NullChains::five : NullChains::both;
      std::optional<VectorXc> z;
      if (!ax_null.empty()) z = parse_complex_list(ax_null);
      json r = header("nullchain", o);
      r.update(to_json(null_chain_check(a, read_tensor_file(x_file), chains, w, o.tol, z)));
      return emit_report(r, o, out);
    }
    if (*c_fixtures) {
      for (const auto& [name, t] : fixtures::all()) write_tensor_file(dir + "/" + name + ".json", t);
      return kPass;
    }
  } catch (const CLI::ValidationError& e) {
    err << "tginv: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "tginv: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "tginv: bad number: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace tginv::cli
