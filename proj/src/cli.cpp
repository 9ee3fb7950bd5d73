#include "exlift/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "exlift/certificate.hpp"
#include "exlift/corpus.hpp"
#include "exlift/exchange.hpp"
#include "exlift/ktheory.hpp"
#include "exlift/lifting.hpp"
#include "exlift/spec_io.hpp"
#include "exlift/vmonoid.hpp"

namespace exlift::cli {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::RingMismatch:
    case ErrorCode::NotInIdeal:
    case ErrorCode::NotIdempotent:
    case ErrorCode::NotAUnit:
    case ErrorCode::NotDownwardClosed:
      return kParse;
    case ErrorCode::NotFredholm:
      return kNotFredholm;
    case ErrorCode::HypothesisFailed:
    case ErrorCode::PreconditionFailed:
      return kHypothesis;
    case ErrorCode::GuardExceeded:
      return kGuard;
    case ErrorCode::VerificationFailed:
      return kVerification;
    case ErrorCode::SearchExhausted:
      return kInternal;
  }
  return kInternal;
}

namespace {

void render(const json& j, int depth, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = *it;
    const bool nested = v.is_object() || (v.is_array() && !v.empty() && v.front().is_object());
    if (!nested) {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render(v, depth + 1, os);
    } else {
      os << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        render(v[i], depth + 2, os);
      }
    }
  }
}

}  // namespace

std::string render_human(const json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

namespace {

constexpr std::size_t kTableLimit = 48;

struct Common {
  std::string spec;
  std::string ideal;
  std::string element;
  std::string format = "human";
  std::string out;
  int truncation = 2;
  std::size_t guard = 0;
  bool force_m4 = false;
};

json report_header(const char* command) {
  return {{"format", "exlift-report"}, {"version", kCertificateVersion}, {"command", command}};
}

json label_list(const FinMonoid& m, const std::vector<MElem>& xs) {
  json out = json::array();
  for (MElem x : xs) out.push_back(m.label(x));
  return out;
}

struct Loaded {
  json doc;
  RingPtr ring;
  std::optional<Ideal> ideal;
};

Loaded load(const Common& c) {
  if (c.spec.empty()) fail(ErrorCode::InvalidSpec, "--spec is required");
  Loaded l;
  l.doc = load_json_file(c.spec);
  if (l.doc.is_object() && l.doc.value("type", "") == "monoid") return l;
  auto spec = parse_ring_spec(l.doc);
  l.ring = spec.ring;
  l.ideal = spec.ideal;
  if (!c.ideal.empty()) {
    json gens;
    try {
      gens = json::parse(c.ideal);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ParseError, std::string("--ideal: ") + e.what());
    }
    l.ideal = parse_ideal(l.ring, {{"generators", gens}});
  }
  return l;
}

Elem parse_element_flag(const FiniteRing& R, const std::string& text) {
  if (text.empty()) fail(ErrorCode::InvalidSpec, "--element is required");
  try {
    return R.parse_element(json::parse(text));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("--element: ") + e.what());
  }
}

json monoid_checks(const FinMonoid& m, const OrderIdeal& s) {
  json out;
  out["axioms"] = m.check_axioms() ? json(*m.check_axioms()) : json("ok");
  out["order_ideal"] = {{"members", label_list(m, s.members())},
                        {"valid", !order_ideal_violation(m, s).has_value()}};
  auto sep = separativity_counterexample(m, &s);
  out["separative"] = {{"holds", !sep}, {"witness", sep ? label_list(m, {sep->first, sep->second}) : json(nullptr)}};
  auto msep = separativity_counterexample(m);
  out["monoid_separative"] = !msep;
  auto ref = refinement_counterexample(m, s);
  out["refinement"] = {{"holds", !ref},
                       {"counterexample", ref ? label_list(m, {(*ref)[0], (*ref)[1], (*ref)[2], (*ref)[3]}) : json(nullptr)}};
  try {
    auto c = cancellation_counterexample(m, s);
    out["cancellation"] = {{"holds", !c}};
    if (c) out["cancellation"]["counterexample"] = {{"a", m.label(c->a)}, {"b", m.label(c->b)}, {"e", m.label(c->e)}, {"n", c->n}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HypothesisFailed) throw;
    out["cancellation"] = {{"skipped", e.what()}};
  }
  return out;
}

json monoid_table(const FinMonoid& m) {
  json labels = json::array(), table = json::array();
  for (MElem a = 0; a < m.size; ++a) labels.push_back(m.label(a));
  if (m.size > kTableLimit) return {{"size", m.size}, {"labels", labels}, {"table", "omitted"}};
  for (MElem a = 0; a < m.size; ++a) {
    json row = json::array();
    for (MElem b = 0; b < m.size; ++b) row.push_back(m.label(m.op(a, b)));
    table.push_back(row);
  }
  return {{"size", m.size}, {"labels", labels}, {"table", table}};
}

json ideal_json(const Ideal& I) {
  json gens = json::array();
  for (Elem g : canonical_generators(I)) gens.push_back(I.ring()->describe(g));
  return {{"generators", gens}, {"size", I.size()}};
}

json check_ring(const RingPtr& R, const Ideal& I, int truncation) {
  json rep = report_header("check");
  rep["ring"] = R->descriptor();
  rep["size"] = R->size();
  rep["ideal"] = ideal_json(I);
  rep["truncation"] = truncation;
  rep["exchange_ring"] = is_exchange_ring(*R);
  rep["exchange_ideal"] = is_exchange_ideal(I);
  const VMonoid v = build_v_monoid(R, truncation);
  const OrderIdeal s = v_order_ideal(v, I);
  json vm = monoid_table(v.monoid);
  vm["types"] = v.types.size();
  rep["v_monoid"] = vm;
  rep["v_ideal_trivial"] = s.members().size() == 1;
  rep["checks"] = monoid_checks(v.monoid, s);
  return rep;
}

json check_monoid(const json& doc) {
  auto [m, s] = monoid_from_json(doc);
  json rep = report_header("check");
  rep["monoid"] = monoid_table(m);
  rep["checks"] = monoid_checks(m, s);
  return rep;
}

const Ideal& need_ideal(const Loaded& l) {
  if (!l.ideal) fail(ErrorCode::InvalidSpec, "an ideal is required (spec \"ideal\" or --ideal)");
  return *l.ideal;
}

json index_report(const RingPtr& R, const Ideal& I, Elem x) {
  const KContext ctx = make_context(I);
  const DeltaResult d = index(ctx, x);
  const ZeroTest z = k0_zero_test(ctx, d.value);
  json rep = report_header("index");
  rep["ring"] = R->descriptor();
  rep["ideal"] = ideal_json(I);
  rep["element"] = R->describe(x);
  rep["whitehead_word"] = word_to_json(d.word, *ctx.quotient);
  rep["lifted_word"] = word_to_json(d.lifted, *R);
  rep["idempotent"] = d.p.to_json();
  rep["index"] = describe(ctx, d.value);
  rep["class_vector"] = k0_class_vector(ctx, d.value);
  rep["zero"] = {{"relaxed", z.relaxed}, {"strict", z.strict ? json(*z.strict) : json("undetermined")}, {"note", z.note}};
  return rep;
}

struct LiftRun {
  json report;
  std::optional<json> certificate;
};

LiftRun lift_report(const RingPtr& R, const Ideal& I, Elem x, bool force_m4) {
  auto ctx = make_lift_context(I);
  LiftOutcome out = lift_unit(*ctx, x, LiftOptions{true, force_m4});
  LiftRun run;
  run.report = report_header("lift");
  run.report["ring"] = R->descriptor();
  run.report["ideal"] = ideal_json(I);
  run.report["element"] = R->describe(x);
  run.report["truncation"] = ctx->truncation;
  run.report["index_zero"] = {{"relaxed", out.index_test.relaxed},
                              {"strict", out.index_test.strict ? json(*out.index_test.strict) : json("undetermined")}};
  if (!out.certificate) {
    run.report["lifted"] = false;
    run.report["index"] = describe(ctx->k_context(), *out.nonzero_index);
    return run;
  }
  const auto& c = *out.certificate;
  run.certificate = certificate_json(I, c);
  const VerifyReport vr = verify_certificate(*run.certificate);
  if (!vr.ok) fail(ErrorCode::VerificationFailed, "emitted certificate fails: " + vr.contract);
  run.report["lifted"] = true;
  run.report["y"] = R->describe(c.y);
  run.report["m"] = c.m;
  run.report["stages"] = c.stages.size();
  run.report["oracle_confirmed"] = c.oracle_confirmed;
  run.report["verified"] = true;
  return run;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::InvalidSpec, "cannot write " + path);
  f << text;
}

void emit(const Common& c, const json& report, std::ostream& out) {
  const std::string text = c.format == "machine" ? report.dump(2) + "\n" : render_human(report);
  out << text;
}

// One corpus entry: properties of (R, I), then every Fredholm element lifted,
// certified and verified.
json corpus_entry(const CorpusEntry& e, const std::string& outdir, std::size_t idx) {
  json rep = {{"name", e.name}, {"tags", e.tags}};
  try {
    auto b = build_entry(e);
    auto ctx = make_lift_context(b.ideal);
    rep["size"] = b.ring->size();
    rep["ideal_size"] = b.ideal.size();
    rep["exchange"] = ctx->exchange;
    rep["separative"] = ctx->separative;
    const OrderIdeal s = v_order_ideal(*ctx->v, b.ideal);
    rep["refinement"] = has_refinement_wrt(ctx->v->monoid, s);
    rep["cancellation"] = lemma13_check(ctx->v->monoid, s);
    int fredholm = 0, lifted = 0, verified = 0, agree = 0;
    json certs = json::array();
    for (Elem x = 0; x < b.ring->size(); ++x) {
      if (!is_fredholm(ctx->k_context(), x)) continue;
      ++fredholm;
      auto out = lift_unit(*ctx, x);
      const bool oracle = oracle_lift(b.ideal, x).has_value();
      agree += out.certificate.has_value() == oracle;
      if (!out.certificate) continue;
      ++lifted;
      json cert = certificate_json(b.ideal, *out.certificate);
      verified += verify_certificate(cert).ok;
      if (!outdir.empty()) {
        const std::string name = "entry" + std::to_string(idx) + "_x" + std::to_string(x) + ".json";
        write_file((std::filesystem::path(outdir) / name).string(), cert.dump(1) + "\n");
        certs.push_back(name);
      }
    }
    rep["fredholm"] = fredholm;
    rep["lifted"] = lifted;
    rep["verified"] = verified;
    rep["oracle_agrees"] = agree;
    if (!outdir.empty()) rep["certificates"] = certs;
    rep["ok"] = ctx->exchange && ctx->separative && lifted == fredholm && verified == lifted && agree == fredholm;
  } catch (const Error& err) {
    rep["error"] = err.what();
    rep["ok"] = false;
  }
  return rep;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exlift: exchange ideals, V-monoids and certified unit lifting over finite rings"};
  app.require_subcommand(1);
  Common c;
  std::vector<std::string> cert_paths;
  int jobs = 0;

  auto common = [&](CLI::App* sub, bool element) {
    sub->add_option("--spec", c.spec, "ring or monoid spec file (JSON)");
    sub->add_option("--ideal", c.ideal, "ideal generators as a JSON list, overriding the spec");
    if (element) sub->add_option("--element", c.element, "element as a JSON descriptor");
    sub->add_option("--truncation", c.truncation, "V-monoid truncation K")->check(CLI::Range(1, 4));
    sub->add_option("--guard", c.guard, "largest carrier size allowed");
    sub->add_option("--format", c.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--out", c.out, "output file (certificate) or directory (corpus)");
  };
  auto* check = app.add_subcommand("check", "exchange, refinement and separativity report");
  common(check, false);
  auto* idx = app.add_subcommand("index", "connecting map of an element and its zero test");
  common(idx, true);
  auto* lift = app.add_subcommand("lift", "lift a unit modulo the ideal and emit a certificate");
  common(lift, true);
  lift->add_flag("--m4", c.force_m4, "force the four by four orbit stage");
  auto* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("certificates", cert_paths, "certificate files")->required();
  verify->add_option("--format", c.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  auto* corpus = app.add_subcommand("corpus", "run the regression corpus");
  corpus->add_option("--out", c.out, "directory for emitted certificates");
  corpus->add_option("--jobs", jobs, "concurrent entries (0: hardware)");
  corpus->add_option("--guard", c.guard, "largest carrier size allowed");
  corpus->add_option("--format", c.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (c.guard) guards().carrier = c.guard;
    if (check->parsed()) {
      Loaded l = load(c);
      json rep = l.ring ? check_ring(l.ring, l.ideal ? *l.ideal : Ideal::zero(l.ring), c.truncation)
                        : check_monoid(l.doc);
      emit(c, rep, out);
      return kOk;
    }
    if (idx->parsed()) {
      Loaded l = load(c);
      if (!l.ring) fail(ErrorCode::InvalidSpec, "index needs a ring spec");
      emit(c, index_report(l.ring, need_ideal(l), parse_element_flag(*l.ring, c.element)), out);
      return kOk;
    }
    if (lift->parsed()) {
      Loaded l = load(c);
      if (!l.ring) fail(ErrorCode::InvalidSpec, "lift needs a ring spec");
      LiftRun r = lift_report(l.ring, need_ideal(l), parse_element_flag(*l.ring, c.element), c.force_m4);
      if (r.certificate && !c.out.empty()) {
        write_file(c.out, r.certificate->dump(1) + "\n");
        r.report["certificate"] = c.out;
      }
      emit(c, r.report, out);
      return kOk;
    }
    if (verify->parsed()) {
      // Every file is checked; a bad one does not stop the rest.
      json rep = report_header("verify");
      json results = json::array();
      bool all = true;
      for (const auto& path : cert_paths) {
        json r = {{"certificate", path}};
        try {
          const VerifyReport v = verify_certificate(load_json_file(path));
          r["kind"] = v.kind;
          r["ok"] = v.ok;
          if (!v.ok) r["failed_contract"] = v.contract;
        } catch (const Error& e) {
          r["ok"] = false;
          r["failed_contract"] = e.what();
        }
        all = all && r["ok"].get<bool>();
        results.push_back(r);
      }
      if (results.size() == 1) {
        for (auto it = results[0].begin(); it != results[0].end(); ++it) rep[it.key()] = *it;
      } else {
        rep["results"] = results;
        rep["ok"] = all;
      }
      emit(c, rep, out);
      return all ? kOk : kVerification;
    }
    if (corpus->parsed()) {
      if (!c.out.empty()) std::filesystem::create_directories(c.out);
      const auto entries = default_corpus();
      const std::size_t width = jobs > 0 ? static_cast<std::size_t>(jobs)
                                         : std::max(1u, std::thread::hardware_concurrency());
      std::vector<json> results(entries.size());
      for (std::size_t start = 0; start < entries.size(); start += width) {
        std::vector<std::future<json>> batch;
        for (std::size_t i = start; i < std::min(entries.size(), start + width); ++i)
          batch.push_back(std::async(std::launch::async, corpus_entry, std::cref(entries[i]), c.out, i));
        for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
      }
      json rep = report_header("corpus");
      bool all = true;
      for (const auto& r : results) all = all && r.at("ok").get<bool>();
      rep["entries"] = results;
      rep["all_ok"] = all;
      emit(c, rep, out);
      return all ? kOk : kVerification;
    }
  } catch (const Error& e) {
    err << "exlift: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "exlift: internal: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace exlift::cli
