#include "dsum/report.hpp"

#include <set>

#include "dsum/error.hpp"
#include "dsum/parse.hpp"

namespace dsum {

namespace {

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_strings()) rows.push_back(r);
  return rows;
}

Json forms_to_json(const std::vector<Form>& forms) {
  Json arr = Json::array();
  for (const auto& f : forms) arr.push_back(print_form(f));
  return arr;
}

Json indices_1based(const std::vector<std::size_t>& v) {
  Json arr = Json::array();
  for (auto i : v) arr.push_back(i + 1);
  return arr;
}

Json criterion_to_json(const CriterionVerdict& v) {
  return Json{{"result", criterion_result_name(v.result)}, {"reason", v.reason}};
}

std::string univariate_text(const Poly& p) {
  std::string s = print_poly(p, Side::S);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 2, "x1") == 0) {
      out += 'T';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

Json benson_to_json(const BensonResult& b) {
  Json j;
  j["outcome"] = benson_outcome_name(b.outcome);
  j["matrix"] = matrix_rows(b.m);
  j["charpoly"] = univariate_text(b.charpoly);
  Json eig = Json::array();
  for (const auto& e : b.eigenvalues) eig.push_back(e.to_string());
  j["eigenvalues"] = eig;
  if (b.outcome == BensonOutcome::Split) {
    Json parts = Json::array();
    for (const auto& g : b.partition) parts.push_back(indices_1based(g));
    j["partition"] = parts;
    j["basis"] = basis_to_json(b.basis);
    j["basis_vectors"] = forms_to_json(basis_vectors_as_forms(b.basis, Side::S));
  } else {
    j["partition"] = nullptr;
    j["basis"] = nullptr;
    j["basis_vectors"] = nullptr;
  }
  return j;
}

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::SchemaError, "field '" + field + "': " + what);
}

std::string get_string(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) schema(key, "missing");
  if (!doc[key].is_string()) schema(key, "expected a string");
  return doc[key].get<std::string>();
}

Scalar parse_entry(const Json& e, const std::string& field, std::uint64_t p) {
  std::string text;
  if (e.is_string()) {
    text = e.get<std::string>();
  } else if (e.is_number_integer()) {
    text = std::to_string(e.get<long long>());
  } else {
    schema(field, "entries must be rational strings or integers");
  }
  mpq_class q;
  try {
    q = mpq_class(text);
  } catch (const std::invalid_argument&) {
    schema(field, "'" + text + "' is not a rational number");
  }
  if (q.get_den() == 0) schema(field, "zero denominator in '" + text + "'");
  q.canonicalize();
  return Scalar::modular(Scalar(q), p);
}

VerifyOutcome verify_one(const std::string& f_text, std::size_t n_hint, std::uint64_t p,
                         const Json& w, const std::string& prefix) {
  VerifyOutcome out;
  const std::string bfield = prefix + "basis";
  if (!w.contains("basis")) schema(bfield, "missing");
  const Json& rows = w["basis"];
  if (!rows.is_array() || rows.empty()) schema(bfield, "expected a non-empty array of rows");
  const std::size_t n = rows.size();
  if (n_hint != 0 && n_hint != n) {
    schema(bfield, "has " + std::to_string(n) + " rows but n = " + std::to_string(n_hint));
  }
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) schema(bfield, "must be a square matrix");
    for (std::size_t j = 0; j < n; ++j) b(i, j) = parse_entry(rows[i][j], bfield, p);
  }
  const std::string t1 = get_string(w, "f1");
  const std::string t2 = get_string(w, "f2");
  const Form f = parse_form(f_text, n, Side::S, p);
  const Form f1 = parse_form(t1, n, Side::S, p);
  const Form f2 = parse_form(t2, n, Side::S, p);
  if (determinant(b).is_zero()) {
    out.messages.push_back(prefix + "basis is singular");
    return out;
  }
  if (f1.is_zero() || f2.is_zero()) {
    out.messages.push_back(prefix + "f1 and f2 must both be nonzero");
    return out;
  }
  const auto s1 = f1.support();
  const auto s2 = f2.support();
  const std::set<std::size_t> first(s1.begin(), s1.end());
  for (auto v : s2) {
    if (first.count(v)) {
      out.messages.push_back(prefix + "f1 and f2 share the variable x" + std::to_string(v + 1));
      return out;
    }
  }
  const Form g = substitute_linear(f, LinearChange(b.transpose()));
  const Form sum = f1 + f2;
  if (g.degree() != sum.degree()) {
    out.messages.push_back(prefix + "degree of f1 + f2 differs from deg f");
    return out;
  }
  const Form diff = g - sum;
  if (!diff.is_zero()) {
    const Monomial& m = diff.poly().leading_monomial();
    out.messages.push_back(prefix + "mismatch at " +
                           print_poly(Poly::term(m, Scalar(1)), Side::S) + ": f in the new basis has " +
                           g.coefficient(m).to_string() + ", f1 + f2 has " +
                           sum.coefficient(m).to_string());
    return out;
  }
  out.pass = true;
  out.messages.push_back(prefix + "pass");
  return out;
}

}  // namespace

std::string field_name(std::uint64_t modulus) {
  return modulus == 0 ? "q" : "fp:" + std::to_string(modulus);
}

std::uint64_t parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return 0;
  if (text.rfind("fp:", 0) == 0 && text.size() > 3) {
    const std::string digits = text.substr(3);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 19) {
      const std::uint64_t p = std::stoull(digits);
      if (is_prime_u64(p)) return p;
      throw Error(ErrorKind::FieldMismatch, digits + " is not prime");
    }
  }
  throw Error(ErrorKind::FieldMismatch, "field must be 'q' or 'fp:<prime>', got '" + text + "'");
}

Json basis_to_json(const LinearChange& basis) { return matrix_rows(basis.matrix().transpose()); }

Json factors_to_json(const FactorList& fl) {
  Json arr = Json::array();
  for (const auto& f : fl.factors) {
    arr.push_back(Json{{"poly", print_form(f.poly)},
                       {"multiplicity", f.multiplicity},
                       {"essential_dim", f.essential.dim()}});
  }
  return arr;
}

Json witness_to_json(const SplitWitness& w) {
  Json j;
  j["mask"] = w.split.mask;
  j["group1"] = indices_1based(w.split.group1);
  j["group2"] = indices_1based(w.split.group2);
  j["G1"] = print_form(w.split.G1);
  j["G2"] = print_form(w.split.G2);
  j["E1"] = forms_to_json(w.split.E1.to_forms());
  j["E2"] = forms_to_json(w.split.E2.to_forms());
  j["a"] = w.a;
  j["basis"] = basis_to_json(w.basis);
  j["basis_vectors"] = forms_to_json(basis_vectors_as_forms(w.basis, Side::S));
  j["f1"] = print_form(w.f1);
  j["f2"] = print_form(w.f2);
  return j;
}

Json maximally_fine_to_json(const MaximallyFine& mf) {
  Json j;
  j["basis"] = basis_to_json(mf.basis);
  j["basis_vectors"] = forms_to_json(basis_vectors_as_forms(mf.basis, Side::S));
  Json arr = Json::array();
  for (const auto& s : mf.summands) {
    arr.push_back(Json{{"block", indices_1based(s.block)},
                       {"form", print_form(s.form)},
                       {"scale", s.scale.to_string()},
                       {"original", print_form(s.original)}});
  }
  j["summands"] = arr;
  return j;
}

Json report_to_json(const DecompositionReport& rep, bool timings) {
  Json j;
  j["input"] = print_form(rep.input);
  j["n"] = rep.n;
  j["degree"] = rep.degree;
  j["field"] = field_name(rep.modulus);
  j["assumptions_ok"] = rep.assumptions_ok;
  j["concise"] = rep.concise ? Json(*rep.concise) : Json(nullptr);
  j["smooth"] = rep.smooth ? Json(*rep.smooth) : Json(nullptr);
  j["associated_form"] = rep.associated_form ? Json(print_form(*rep.associated_form)) : Json(nullptr);
  j["factors"] = rep.factors ? factors_to_json(*rep.factors) : Json(nullptr);
  Json splits = Json::array();
  for (const auto& w : rep.splits) splits.push_back(witness_to_json(w));
  j["splits"] = splits;
  j["verdict"] = verdict_name(rep.verdict);
  j["fiber_dimension"] = rep.fiber_dimension ? Json(*rep.fiber_dimension) : Json(nullptr);
  j["maximally_fine"] = rep.maximally_fine ? maximally_fine_to_json(*rep.maximally_fine) : Json(nullptr);
  j["criteria"] = Json{{"mt3", criterion_to_json(rep.mt3)}, {"mt4", criterion_to_json(rep.mt4)}};
  j["field_note"] = rep.field_note ? Json(*rep.field_note) : Json(nullptr);
  j["benson"] = rep.benson ? benson_to_json(*rep.benson) : Json(nullptr);
  j["benson_note"] = rep.benson_note ? Json(*rep.benson_note) : Json(nullptr);
  j["note"] = rep.note.empty() ? Json(nullptr) : Json(rep.note);
  if (timings) {
    Json t = Json::object();
    for (const auto& [k, v] : rep.timings_ms) t[k] = v;
    j["timings_ms"] = t;
  } else {
    j["timings_ms"] = nullptr;
  }
  j["seed"] = rep.seed;
  return j;
}

VerifyOutcome verify_witness(const Json& doc) {
  if (!doc.is_object()) schema("(root)", "expected a JSON object");
  std::uint64_t p = 0;
  if (doc.contains("field")) {
    try {
      p = parse_field(get_string(doc, "field"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SchemaError) throw;
      schema("field", e.what());
    }
  }
  std::size_t n_hint = 0;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned()) schema("n", "expected a positive integer");
    n_hint = doc["n"].get<std::size_t>();
  }
  if (doc.contains("splits")) {
    const std::string f = get_string(doc, "input");
    if (!doc["splits"].is_array()) schema("splits", "expected an array");
    VerifyOutcome all;
    all.pass = !doc["splits"].empty();
    if (!all.pass) all.messages.push_back("report carries no split witnesses");
    for (std::size_t i = 0; i < doc["splits"].size(); ++i) {
      const VerifyOutcome one =
          verify_one(f, n_hint, p, doc["splits"][i], "splits[" + std::to_string(i) + "].");
      all.pass = all.pass && one.pass;
      all.messages.insert(all.messages.end(), one.messages.begin(), one.messages.end());
    }
    return all;
  }
  const std::string f = doc.contains("f") ? get_string(doc, "f") : get_string(doc, "input");
  return verify_one(f, n_hint, p, doc, "");
}

}  // namespace dsum
