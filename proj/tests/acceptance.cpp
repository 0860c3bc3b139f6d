// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dsum/criteria.hpp"
#include "dsum/decomposition.hpp"
#include "dsum/error.hpp"
#include "dsum/report.hpp"
#include "support.hpp"

using namespace dsum;
using dsum::test::D;
using dsum::test::proportional;
using dsum::test::S;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool witnesses_verify(const DecompositionReport& rep) {
  if (rep.splits.empty()) return false;
  return verify_witness(report_to_json(rep)).pass;
}

Form normalized(const Form& f) { return normalize_leading(f).first; }

// (block size, normalized summand in original coordinates), sorted
std::vector<std::pair<std::size_t, std::string>> summand_signature(const MaximallyFine& mf,
                                                                  const Matrix* change) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (const auto& s : mf.summands) {
    const Form g = change ? substitute_raw(s.original, *change) : s.original;
    out.emplace_back(s.block.size(), print_form(normalized(g)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// C1
void fermat_associated_forms(Outcome& o) {
  const std::vector<std::tuple<std::string, std::size_t, std::string>> cases = {
      {"x1^3 + x2^3 + x3^3", 3, "z1*z2*z3"}, {"x1^4 + x2^4", 2, "z1^2*z2^2"}};
  for (const auto& [text, n, expected] : cases) {
    const auto t0 = Clock::now();
    const Form a = associated_form(S(text, n));
    const double dt = seconds_since(t0);
    o.check(proportional(a, D(expected, n)), "A(" + text + ") = " + print_form(a));
    o.check(dt < 1.0, text + " took " + std::to_string(dt) + " s");
    o.detail << text << " -> " << print_form(a) << " (" << dt << " s); ";
  }
}

// C2
void binary_quartics(Outcome& o) {
  const auto t0 = Clock::now();
  const auto family = dsum::test::oracles()["quartic_family"];
  std::map<int, std::string> oracle;
  for (const auto& e : family) oracle[e["t"].get<int>()] = e["verdict"].get<std::string>();
  for (int t : {0, 1, 3, 6, -6, 2}) {
    const std::string ts = std::to_string(t);
    const Form f = S("x1^4 + x2^4 + " + ts + "*x1^2*x2^2", 2);
    const bool smooth = is_smooth(f);
    o.check(smooth == (t != 2 && t != -2), "smoothness at t = " + ts);
    const DecompositionReport rep = classify(f);
    if (!smooth) {
      o.check(rep.verdict == Verdict::NotSmooth, "t = " + ts + " verdict " + verdict_name(rep.verdict));
      continue;
    }
    o.check(rep.associated_form.has_value() &&
                proportional(*rep.associated_form, D(ts + "*z1^4 - 12*z1^2*z2^2 + " + ts + "*z2^4", 2)),
            "A(f_" + ts + ")");
    if (t == 0 || t == 6) {
      o.check(rep.verdict == Verdict::DirectSum && witnesses_verify(rep), "t = " + ts + " direct sum");
    } else if (t == -6) {
      o.check(rep.verdict == Verdict::NotDirectSum && rep.field_note.has_value(), "t = -6");
    } else {
      o.check(oracle.count(t) && oracle[t] == verdict_name(rep.verdict),
              "t = " + ts + " verdict " + verdict_name(rep.verdict) + " vs oracle " + oracle[t]);
    }
    o.detail << "t=" << t << ":" << verdict_name(rep.verdict) << " ";
  }
  const double dt = seconds_since(t0);
  o.check(dt < 5.0, "family took " + std::to_string(dt) + " s");
  o.detail << "(" << dt << " s)";
}

// C3
void intro_cubic(Outcome& o) {
  const auto t0 = Clock::now();
  const Form f = S(dsum::test::read_data("intro_cubic.txt"), 3);
  const DecompositionReport rep = classify(f);
  o.check(rep.associated_form.has_value() &&
              proportional(*rep.associated_form,
                           D("-z1^3 + z1^2*z2 + 1/2*z1*z2^2 + z1^2*z3 - 2*z1*z2*z3 + 1/2*z1*z3^2", 3)),
          "A(f) differs from the displayed form");
  o.check(rep.verdict == Verdict::DirectSum && !rep.splits.empty(), "verdict");
  if (!rep.splits.empty()) {
    const SplitWitness& w = rep.splits[0];
    const auto vecs = basis_vectors_as_forms(w.basis, Side::S);
    o.check(proportional(vecs[0], S("x1 + x2 + x3", 3)) && proportional(vecs[1], S("x2", 3)) &&
                proportional(vecs[2], S("x3", 3)),
            "basis");
    // f1 + f2 = c1 y1^3 + c2 (y2^3 + y2^2 y3 + y2 y3^2 + y3^3)
    o.check(proportional(w.f1, S("x1^3", 3)) &&
                proportional(w.f2, S("x2^3 + x2^2*x3 + x2*x3^2 + x3^3", 3)),
            "transformed form");
    o.check(witnesses_verify(rep), "witness verification");
    o.detail << "basis " << print_form(vecs[0]) << ", " << print_form(vecs[1]) << ", "
             << print_form(vecs[2]) << "; f1 = " << print_form(w.f1) << ", f2 = " << print_form(w.f2);
  }
  const double dt = seconds_since(t0);
  o.check(dt < 2.0, "took " + std::to_string(dt) + " s");
  o.detail << " (" << dt << " s)";
}

// C4
void random_quartic(Outcome& o) {
  const auto t0 = Clock::now();
  const Form f = S(dsum::test::read_data("random_quartic.txt"), 4);
  const DecompositionReport rep = classify(f);
  o.check(rep.associated_form.has_value() &&
              proportional(*rep.associated_form, D(dsum::test::read_data("random_quartic_assoc.txt"), 4)),
          "A(f) differs from the displayed form");
  o.check(rep.verdict == Verdict::DirectSum, "verdict");
  bool found = false;
  for (const auto& w : rep.splits) {
    const std::set<std::size_t> dims = {w.split.E1.dim(), w.split.E2.dim()};
    if (dims != std::set<std::size_t>{1, 3}) continue;
    found = true;
    const Subspace expected = Subspace::span(
        Ambient::graded(Side::D, 4, 1),
        std::vector<Form>{D("3*z3 + 2*z4", 4), D("3*z2 + z4", 4), D("3*z1 + z4", 4)});
    const Subspace& big = w.split.E1.dim() == 3 ? w.split.E1 : w.split.E2;
    const Form& small = w.split.E1.dim() == 1 ? w.f1 : w.f2;
    o.check(big == expected, "E(G2)");
    std::size_t involved = 0;
    for (std::size_t v = 0; v < 4; ++v) involved += small.poly().involves(v);
    o.check(involved == 1 && small.terms().size() == 1, "dimension-1 summand is not a pure power");
    o.detail << "E(G2) = <";
    const auto gens = big.to_forms();
    for (std::size_t i = 0; i < gens.size(); ++i) o.detail << (i ? ", " : "") << print_form(gens[i]);
    o.detail << ">, small summand " << print_form(small) << "; ";
  }
  o.check(found, "no split with essential dimensions {1, 3}");
  o.check(witnesses_verify(rep), "witness verification");
  const double dt = seconds_since(t0);
  o.check(dt < 60.0, "took " + std::to_string(dt) + " s");
  o.detail << "(" << dt << " s)";
}

// C5
void fiber_summand_identity(Outcome& o, const std::vector<dsum::test::CorpusForm>& corpus) {
  std::size_t ok = 0;
  for (const auto& c : corpus) {
    const std::size_t fiber = gradient_fiber(c.f).dim();
    const std::size_t r = maximally_fine(c.f).summands.size();
    o.check(fiber == r, c.label + ": fiber " + std::to_string(fiber) + " vs " + std::to_string(r) + " summands");
    ok += fiber == r;
  }
  o.detail << ok << "/" << corpus.size() << " forms";
}

// C6
void equivalence(Outcome& o, const std::vector<dsum::test::CorpusForm>& ds,
                 const std::vector<dsum::test::CorpusForm>& generic) {
  std::size_t agree = 0, total = 0, non_ds = 0;
  auto run = [&](const dsum::test::CorpusForm& c, bool expect_ds) {
    const DecompositionReport rep = classify(c.f);
    const bool a = rep.verdict == Verdict::DirectSum;
    const bool b = gradient_fiber(c.f).dim() > 1;
    const bool g = has_topdegree_minimal_generator(c.f);
    const bool same = a == b && b == g;
    o.check(same, c.label + " disagrees");
    if (expect_ds) o.check(a, c.label + " is a known direct sum");
    agree += same;
    non_ds += !a;
    ++total;
  };
  for (const auto& c : ds) run(c, true);
  for (const auto& c : generic) run(c, false);
  o.check(non_ds >= 20, "fewer than 20 non-direct-sum forms");
  o.detail << agree << "/" << total << " agree, " << non_ds << " non-direct sums";
}

// C7
void uniqueness(Outcome& o, const std::vector<dsum::test::CorpusForm>& corpus) {
  std::mt19937_64 rng(0x1A7E);
  std::size_t ok = 0, total = 0;
  for (const auto& c : corpus) {
    const MaximallyFine base = maximally_fine(c.f);
    for (int k = 0; k < 10; ++k) {
      const Matrix change = dsum::test::random_invertible(c.f.nvars(), rng);
      const Form g = substitute_raw(c.f, change);
      const bool same = summand_signature(maximally_fine(g), nullptr) == summand_signature(base, &change);
      o.check(same, c.label + " change " + std::to_string(k));
      ok += same;
      ++total;
    }
  }
  o.detail << ok << "/" << total << " basis changes";
}

// C8
void criteria(Outcome& o, const std::vector<dsum::test::CorpusForm>& corpus) {
  const auto fires = [](const CriterionVerdict& v) { return v.result == CriterionResult::NotDirectSum; };
  std::size_t det = 0, perm = 0, pf = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    det += fires(state_criterion(gen_structured(StructuredKind::Determinant, 3, seed)));
    perm += fires(state_criterion(gen_structured(StructuredKind::Permanent, 3, seed)));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    pf += fires(state_criterion(gen_structured(StructuredKind::Pfaffian, 3, seed)));
  }
  o.check(det == 100, "determinant-like");
  o.check(perm == 100, "permanent-like");
  o.check(pf == 10, "pfaffian-like");
  const CriterionVerdict repeated = factor_criterion(S("x1^4 + 2*x1^2*x2^2 + x2^4", 2));
  const CriterionVerdict linear = factor_criterion(S("x1^3 + x1*x2^2 + x1*x3^2 + 2*x1^2*x3", 3));
  o.check(fires(repeated), "repeated factor fixture: " + repeated.reason);
  o.check(fires(linear), "linear factor fixture: " + linear.reason);
  std::size_t silent = 0;
  for (const auto& c : corpus) {
    const bool quiet = !fires(factor_criterion(c.f)) && !fires(state_criterion(c.f));
    o.check(quiet, "criterion fired on " + c.label);
    silent += quiet;
  }
  o.detail << "det " << det << "/100, perm " << perm << "/100, pfaffian " << pf
           << "/10, MT3 fixtures [" << repeated.reason << "] [" << linear.reason << "], sound on "
           << silent << "/" << corpus.size();
}

bool same_factors(const FactorList& fl, const std::vector<std::pair<Form, int>>& expected) {
  if (fl.factors.size() != expected.size()) return false;
  std::vector<bool> used(expected.size(), false);
  for (const auto& f : fl.factors) {
    bool found = false;
    for (std::size_t i = 0; i < expected.size() && !found; ++i) {
      if (!used[i] && expected[i].second == f.multiplicity && proportional(f.poly, expected[i].first)) {
        used[i] = found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// C9
void factorization_round_trip(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t ok = 0, total = 0;
  const auto doc = dsum::test::oracles();
  for (const auto& c : doc["factorizations"]) {
    const std::size_t n = c["n"];
    const Form f = S(c["f"].get<std::string>(), n);
    std::vector<std::pair<Form, int>> expected;
    for (const auto& e : c["factors"]) expected.emplace_back(S(e["poly"].get<std::string>(), n), e["multiplicity"].get<int>());
    const FactorList fl = factor_multivariate(f);
    const bool good = same_factors(fl, expected) && fl.expand() == f;
    o.check(good, c["f"].get<std::string>());
    ok += good;
    ++total;
  }
  const double dt = seconds_since(t0);
  o.check(total == 50, "expected 50 products");
  o.check(dt < 30.0, "took " + std::to_string(dt) + " s");
  o.detail << ok << "/" << total << " products (" << dt << " s)";
}

// C10
void lds_pathway(Outcome& o) {
  std::size_t concise = 0, ok = 0, lds_ind = 0, split = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const int degree = n == 2 ? 4 : 3 + static_cast<int>(seed % 2);
    const std::size_t ell = (n == 4 && seed % 2) ? 2 : 1;
    const Form f = random_lds(n, degree, ell, seed);
    const std::string label = "seed " + std::to_string(seed) + " " + print_form(f);
    o.check(!is_smooth(f), label + " is smooth");
    if (!is_concise(f)) continue;
    ++concise;
    const Subspace fiber = gradient_fiber(f);
    const DecompositionReport rep = classify(f);
    bool good = fiber.dim() >= 2 && rep.verdict == Verdict::DsOrLdsOverClosure;
    o.check(good, label + ": fiber " + std::to_string(fiber.dim()) + ", verdict " + verdict_name(rep.verdict));
    // the first fiber element not proportional to f that gives an answer over Q
    std::optional<BensonOutcome> outcome;
    for (const Form& g : fiber.to_forms()) {
      if (proportional(g, f)) continue;
      try {
        outcome = benson_split(f, g).outcome;
        if (*outcome != BensonOutcome::Proportional) break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::FieldExtensionRequired) throw;
      }
    }
    const bool benson_ok = outcome && (*outcome == BensonOutcome::LdsIndicator || *outcome == BensonOutcome::Split);
    o.check(benson_ok, label + ": no Jordan indicator or rational split");
    lds_ind += outcome && *outcome == BensonOutcome::LdsIndicator;
    split += outcome && *outcome == BensonOutcome::Split;
    ok += good && benson_ok;
  }
  o.detail << "20/20 singular, " << ok << "/" << concise << " concise forms pass (" << lds_ind
           << " Jordan indicators, " << split << " rational split" << (split == 1 ? ")" : "s)");
}

}  // namespace

int main() {
  const auto ds = dsum::test::direct_sum_corpus(20);
  const auto generic = dsum::test::generic_corpus(20);
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria_list = {
      {"Fermat associated forms", fermat_associated_forms},
      {"binary quartic family", binary_quartics},
      {"intro ternary cubic", intro_cubic},
      {"random 4-variable quartic", random_quartic},
      {"fiber-summand identity", [&](Outcome& o) { fiber_summand_identity(o, ds); }},
      {"direct sum equivalences", [&](Outcome& o) { equivalence(o, ds, generic); }},
      {"uniqueness under basis change", [&](Outcome& o) { uniqueness(o, ds); }},
      {"necessary-condition criteria", [&](Outcome& o) { criteria(o, ds); }},
      {"factorization round trip", factorization_round_trip},
      {"LDS pathway", lds_pathway},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria_list.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria_list[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double dt = seconds_since(t0);
    failures += !o.pass;
    std::printf("C%zu %s %s: %s [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria_list[i].first.c_str(),
                o.detail.str().c_str(), dt);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
