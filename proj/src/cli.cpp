#include "dsum/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dsum/decomposition.hpp"
#include "dsum/error.hpp"
#include "dsum/parse.hpp"
#include "dsum/report.hpp"

namespace dsum {

namespace {

struct Request {
  std::string command;
  std::size_t n = 0;
  std::string field = "q";
  std::string seed = "0x5EED";
  std::uint64_t max_ambient_dim = kDefaultMaxAmbientDim;
  std::size_t max_factor_vars = FactorGuards{}.max_vars;
  int max_factor_degree = FactorGuards{}.max_degree;
  int threads = 1;
  bool json = false;
  bool pretty = false;
  bool timings = false;
  std::string poly;
  std::string file;
  std::string witness;
  std::string positional;
};

std::string read_all(std::istream& is) {
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::SchemaError, "cannot open '" + path + "'");
  return read_all(f);
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  const auto b = s.find_first_not_of(' ');
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(' ') - b + 1);
}

std::string source_text(const Request& rq, std::istream& in) {
  if (!rq.poly.empty()) return rq.poly;
  if (!rq.file.empty()) return read_file(rq.file);
  if (!rq.positional.empty() && rq.positional != "-") return read_file(rq.positional);
  return read_all(in);
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used, 0);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::SyntaxError, "seed '" + s + "' is not an unsigned 64-bit integer");
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::GuardExceeded:
    case ErrorKind::UnluckyEvaluationExhausted:
      return kExitGuard;
    case ErrorKind::InternalInconsistency:
    case ErrorKind::KernelDimensionError:
      return kExitFail;
    default:
      return kExitInput;
  }
}

// "--command X" is accepted as an alias for the subcommand X.
std::vector<std::string> rewrite_command_flag(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--command" && i + 1 < args.size()) {
      std::string cmd = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      args.insert(args.begin(), cmd);
      break;
    }
    if (args[i].rfind("--command=", 0) == 0) {
      std::string cmd = args[i].substr(10);
      args.erase(args.begin() + static_cast<long>(i));
      args.insert(args.begin(), cmd);
      break;
    }
  }
  return args;
}

Form read_form(const Request& rq, std::istream& in, std::uint64_t p) {
  const std::string text = one_line(source_text(rq, in));
  if (text.empty()) throw Error(ErrorKind::SyntaxError, "empty input");
  std::size_t n = rq.n;
  if (n == 0) n = std::max<std::size_t>(1, max_variable_index(text, Side::S));
  return parse_form(text, n, Side::S, p);
}

std::string factor_text(const FactorList& fl) {
  std::string s = fl.unit.to_string();
  for (const auto& f : fl.factors) {
    s += " * (" + print_form(f.poly) + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s;
}

int cmd_analyze(const Request& rq, const Form& f, const ClassifyOptions& opts, std::ostream& out) {
  const DecompositionReport rep = classify(f, opts);
  out << dump(report_to_json(rep, rq.timings), rq.pretty) << "\n";
  return kExitOk;
}

int cmd_decompose(const Request& rq, const Form& f, const ClassifyOptions& opts, std::ostream& out) {
  DecompositionReport rep = decompose_once(f, opts);
  rep.mt3.reason = rep.mt4.reason = "not evaluated by decompose";
  if (rep.verdict == Verdict::DirectSum) rep.maximally_fine = maximally_fine(f, opts);
  out << dump(report_to_json(rep, rq.timings), rq.pretty) << "\n";
  return kExitOk;
}

int cmd_assocform(const Request& rq, const Form& f, const ClassifyOptions& opts, std::ostream& out) {
  check_characteristic(f.nvars(), f.degree(), f.modulus());
  const bool smooth = is_smooth(f, opts.max_ambient_dim);
  std::optional<Form> a;
  if (smooth) a = associated_form(f, opts.max_ambient_dim);
  if (!rq.json) {
    out << (a ? print_form(*a) : std::string("not_smooth")) << "\n";
    return kExitOk;
  }
  Json j;
  j["input"] = print_form(f);
  j["n"] = f.nvars();
  j["degree"] = f.degree();
  j["field"] = field_name(f.modulus());
  j["smooth"] = smooth;
  j["associated_form"] = a ? Json(print_form(*a)) : Json(nullptr);
  j["error"] = smooth ? Json(nullptr) : Json("not_smooth");
  out << dump(j, rq.pretty) << "\n";
  return kExitOk;
}

int cmd_factor(const Request& rq, const Form& f, const ClassifyOptions& opts, std::ostream& out) {
  const FactorList fl = factor_multivariate(f, opts.seed, opts.guards);
  if (!rq.json) {
    out << factor_text(fl) << "\n";
    return kExitOk;
  }
  Json j;
  j["input"] = print_form(f);
  j["n"] = f.nvars();
  j["degree"] = f.degree();
  j["field"] = field_name(f.modulus());
  j["unit"] = fl.unit.to_string();
  j["factors"] = factors_to_json(fl);
  j["seed"] = opts.seed;
  out << dump(j, rq.pretty) << "\n";
  return kExitOk;
}

int cmd_verify(const Request& rq, std::istream& in, std::ostream& out) {
  std::string text;
  if (!rq.witness.empty()) {
    text = read_file(rq.witness);
  } else {
    text = source_text(rq, in);
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("witness is not valid JSON: ") + e.what());
  }
  const VerifyOutcome v = verify_witness(doc);
  Json j;
  j["pass"] = v.pass;
  j["messages"] = v.messages;
  out << dump(j, rq.pretty) << "\n";
  return v.pass ? kExitOk : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Request rq;
  CLI::App app{"Direct sum decomposition of homogeneous forms", "dsum"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--n", rq.n, "number of variables (default: largest index in the input)");
  app.add_option("--field", rq.field, "q or fp:<prime>")->capture_default_str();
  app.add_option("--seed", rq.seed, "random seed (decimal or 0x hex)")->capture_default_str();
  app.add_option("--max-ambient-dim", rq.max_ambient_dim, "ceiling on dim D_{n(d-1)}")
      ->capture_default_str();
  app.add_option("--max-factor-vars", rq.max_factor_vars, "factorization variable ceiling")
      ->capture_default_str();
  app.add_option("--max-factor-degree", rq.max_factor_degree, "factorization degree ceiling")
      ->capture_default_str();
  // results never depend on the thread count; computation is single-threaded
  app.add_option("--threads", rq.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", rq.json, "JSON output for assocform and factor");
  app.add_flag("--pretty", rq.pretty, "indented JSON (implies --json)");
  app.add_flag("--timings", rq.timings, "include timings_ms in reports");
  app.add_option("--poly", rq.poly, "the form as inline text");
  app.add_option("--file", rq.file, "read the form (or witness) from a file");

  const char* commands[][2] = {
      {"analyze", "full classification report"},
      {"assocform", "normalized associated form A(f)"},
      {"factor", "irreducible factorization of the form"},
      {"decompose", "one level of splitting plus the maximally fine decomposition"},
      {"verify", "check a split witness or every witness of a report"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("input", rq.positional, "input file, '-' for stdin");
    if (std::string(c[0]) == "verify") sub->add_option("--witness", rq.witness, "witness JSON file");
    sub->callback([&rq, name = std::string(c[0])] { rq.command = name; });
  }

  std::vector<std::string> args = rewrite_command_flag(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (rq.pretty) rq.json = true;

  try {
    ClassifyOptions opts;
    opts.seed = parse_seed(rq.seed);
    opts.max_ambient_dim = rq.max_ambient_dim;
    opts.guards.max_vars = rq.max_factor_vars;
    opts.guards.max_degree = rq.max_factor_degree;
    if (rq.command == "verify") return cmd_verify(rq, in, out);
    const std::uint64_t p = parse_field(rq.field);
    const Form f = read_form(rq, in, p);
    if (rq.command == "analyze") return cmd_analyze(rq, f, opts, out);
    if (rq.command == "decompose") return cmd_decompose(rq, f, opts, out);
    if (rq.command == "assocform") return cmd_assocform(rq, f, opts, out);
    return cmd_factor(rq, f, opts, out);
  } catch (const Error& e) {
    const std::string name(error_kind_name(e.kind()));
    out << dump(Json{{"error", name}, {"message", e.what()}}, rq.pretty) << "\n";
    err << "dsum: " << name << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    out << dump(Json{{"error", "internal"}, {"message", e.what()}}, rq.pretty) << "\n";
    err << "dsum: internal: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace dsum
