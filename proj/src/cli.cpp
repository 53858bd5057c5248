#include "fekete/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "fekete/checker.hpp"
#include "fekete/constructions.hpp"
#include "fekete/error.hpp"
#include "fekete/io.hpp"
#include "fekete/limits.hpp"

namespace fekete::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError("cannot write '" + path + "'");
  file << text;
}

SequencePrefix load_sequence(const std::string& path) { return io::parse_sequence(read_file(path)); }

bool names_builtin_family(const std::string& spec) {
  const std::string name = spec.substr(0, spec.find(','));
  const auto& names = builtin_family_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

/// `zero`, a family name, `family:name,params`, or a JSON/CSV file.
ErrorTerm load_error_term(const std::string& spec, Index horizon) {
  if (spec.rfind("family:", 0) == 0 || names_builtin_family(spec)) {
    return builtin_error_term(io::parse_family_spec(spec), horizon);
  }
  const std::string text = read_file(spec);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return io::parse_error_term_json(text, horizon);
  const SequencePrefix table = io::parse_sequence_csv(text);
  return ErrorTerm(std::vector<Rational>(table.values().begin(), table.values().end()));
}

PairDomain load_domain(const std::string& spec) {
  if (spec.rfind("explicit:", 0) == 0) return io::parse_explicit_domain(read_file(spec.substr(9)));
  return parse_domain(spec);
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational r = Rational::parse(item);
    if (!r.is_integer()) throw ParseError("expected integers in list '" + text + "'");
    out.push_back(to_int64(r.numerator()));
  }
  return out;
}

struct Options {
  std::string seq;
  std::string f = "zero";
  std::string domain = "full";
  std::string output;
  std::string mu;
  std::string L;
  std::string lo;
  std::string hi;
  std::string anchors;
  std::vector<std::string> forbid;
  Index N = 1;
  Index n = 0;
  Index m = 0;
  Index k = 0;
  Index z = 0;
  Index H = 0;
  Index K = 0;
  Index Hmax = 0;
  Index count = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of nearly subadditive sequences", "fekete"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* check = app.add_subcommand("check", "Scan a prefix for subadditivity violations");
  check->add_option("--seq", o.seq, "Sequence file (JSON or CSV)")->required();
  check->add_option("--f", o.f, "Error term: zero | family[:params] | FILE");
  check->add_option("--domain", o.domain, "full | threshold:N | muband:P/Q,N | oneplus:N | explicit:FILE");
  check->add_option("-o", o.output, "Output file");
  check->callback([&] {
    action = [&] {
      const SequencePrefix a = load_sequence(o.seq);
      const ErrorTerm f = load_error_term(o.f, a.horizon());
      const ViolationReport report = scan_violations(a, f, load_domain(o.domain));
      emit(io::dump(io::to_json(report)), o.output, out);
      return report.clean() ? kOk : kCheckFailed;
    };
  });

  auto* limit = app.add_subcommand("limit", "Certified upper bound on lim a(n)/n");
  limit->add_option("--seq", o.seq)->required();
  limit->add_option("--N", o.N)->required();
  limit->add_option("-o", o.output);
  limit->callback([&] {
    action = [&] {
      emit(io::dump(io::to_json(fekete_bracket(load_sequence(o.seq), o.N))), o.output, out);
      return kOk;
    };
  });

  auto* certify = app.add_subcommand("certify-mu", "Doubling vs (1+mu)-growth chain certificate");
  certify->add_option("--mu", o.mu)->required();
  certify->add_option("--N", o.N)->required();
  certify->add_option("--n", o.n)->required();
  certify->add_option("-o", o.output);
  certify->callback([&] {
    action = [&] {
      const MuChainCertificate cert = mu_chain_certificate(Rational::parse(o.mu), o.N, o.n);
      io::Json doc = io::to_json(cert);
      const bool splits_apply = cert.n >= cert.N2;
      const auto gap = first_unsplittable(cert);
      doc["splits_checked"] = splits_apply;
      doc["split_gap"] = gap ? io::Json{{"level", gap->level}, {"z", gap->z}} : io::Json(nullptr);
      emit(io::dump(doc), o.output, out);
      return cert.doubling_covered && !(splits_apply && gap) ? kOk : kCheckFailed;
    };
  });

  auto* decompose = app.add_subcommand("decompose", "2-good merge chain for n and k");
  decompose->add_option("--n", o.n)->required();
  decompose->add_option("--k", o.k)->required();
  decompose->add_option("--seq", o.seq, "Optional sequence: report the telescoping sums");
  decompose->add_option("-o", o.output);
  decompose->callback([&] {
    action = [&] {
      const TwoGoodChain chain = two_good_chain(o.n, o.k);
      io::Json doc = io::to_json(chain);
      int code = kOk;
      if (!o.seq.empty()) {
        const std::vector<Rational> sums = chain_sums(chain, load_sequence(o.seq));
        io::Json js = io::Json::array();
        for (const auto& s : sums) js.push_back(s.to_string());
        const bool monotone = std::is_sorted(sums.rbegin(), sums.rend());
        doc["sums"] = js;
        doc["sums_non_increasing"] = monotone;
        if (!monotone) code = kCheckFailed;
      }
      emit(io::dump(doc), o.output, out);
      return code;
    };
  });

  auto* construct = app.add_subcommand("construct", "Generate an example sequence");
  construct->require_subcommand(1);

  auto* convex = construct->add_subcommand("convex", "a(n) = n sum f(i)/i^2");
  convex->add_option("--f", o.f)->required();
  convex->add_option("--H", o.H)->required();
  convex->add_option("-o", o.output)->required();
  convex->callback([&] {
    action = [&] {
      emit(io::serialize_sequence_json(convex_from_error(load_error_term(o.f, o.H), o.H)), o.output, out);
      return kOk;
    };
  });

  auto* slopes = construct->add_subcommand("rational-slopes", "Slopes b(n)/n hitting r_1..r_K, all distinct");
  slopes->add_option("--f", o.f)->required();
  slopes->add_option("--K", o.K)->required();
  slopes->add_option("--Hmax", o.Hmax)->required();
  slopes->add_option("-o", o.output)->required();
  slopes->callback([&] {
    action = [&] {
      const ErrorTerm f = load_error_term(o.f, o.Hmax);
      emit(io::dump(io::to_json(rational_slope_sequence(f, o.K, o.Hmax))), o.output, out);
      return kOk;
    };
  });

  auto* gap = construct->add_subcommand("threshold-gap", "Subadditive only for n, m >= N");
  gap->add_option("--N", o.N)->required();
  gap->add_option("--anchors", o.anchors, "Comma-separated n_1 < n_2 < ...")->required();
  gap->add_option("--H", o.H)->required();
  gap->add_option("-o", o.output)->required();
  gap->callback([&] {
    action = [&] {
      emit(io::serialize_sequence_json(threshold_gap_example(o.N, parse_index_list(o.anchors), o.H)), o.output, out);
      return kOk;
    };
  });

  auto* linear = construct->add_subcommand("linear-error", "Oscillating slopes under a linear error term");
  linear->add_option("--f", o.f)->required();
  linear->add_option("--L", o.L)->required();
  linear->add_option("--H", o.H)->required();
  linear->add_option("-o", o.output)->required();
  linear->callback([&] {
    action = [&] {
      const ErrorTerm f = load_error_term(o.f, o.H);
      emit(io::dump(io::to_json(linear_error_example(f, Rational::parse(o.L), o.H))), o.output, out);
      return kOk;
    };
  });

  auto* gdef = app.add_subcommand("gdeficit", "G(n+m) - G(n) - G(m) for the G-transform");
  gdef->add_option("--seq", o.seq)->required();
  gdef->add_option("--f", o.f)->required();
  gdef->add_option("--n", o.n)->required();
  gdef->add_option("--m", o.m)->required();
  gdef->callback([&] {
    action = [&] {
      const SequencePrefix a = load_sequence(o.seq);
      const ErrorTerm f = load_error_term(o.f, a.horizon());
      const Rational d = g_deficit(a, f, std::min(o.n, o.m), std::max(o.n, o.m));
      out << io::dump({{"n", std::min(o.n, o.m)}, {"m", std::max(o.n, o.m)}, {"deficit", d.to_string()}});
      return kOk;
    };
  });

  auto* qmono = app.add_subcommand("q-monotone", "Indices where q(n) < q(n+1)");
  qmono->add_option("--seq", o.seq)->required();
  qmono->add_option("--N", o.N)->required();
  qmono->add_option("-o", o.output);
  qmono->callback([&] {
    action = [&] {
      const SequencePrefix a = load_sequence(o.seq);
      const auto increases = check_q_monotone(a, o.N);
      emit(io::dump({{"N", o.N}, {"q", io::to_json(q_sequence(a, o.N))}, {"increases", increases}}), o.output, out);
      return increases.empty() ? kOk : kCheckFailed;
    };
  });

  auto* convexity = app.add_subcommand("convexity", "Indices with negative second difference");
  convexity->add_option("--seq", o.seq)->required();
  convexity->callback([&] {
    action = [&] {
      const auto bad = check_convexity(load_sequence(o.seq));
      out << io::dump({{"concave_at", bad}});
      return bad.empty() ? kOk : kCheckFailed;
    };
  });

  auto* enumerate = app.add_subcommand("enumerate", "First terms of the rational enumeration");
  enumerate->add_option("--count", o.count)->required();
  enumerate->callback([&] {
    action = [&] {
      if (o.count < 1) throw DomainError("--count must be >= 1");
      io::Json arr = io::Json::array();
      for (Index i = 1; i <= o.count; ++i) arr.push_back(enumerate_rationals(i).to_string());
      out << io::dump({{"rationals", arr}});
      return kOk;
    };
  });

  auto* simplest = app.add_subcommand("simplest", "Simplest rational in an open interval");
  simplest->add_option("--lo", o.lo)->required();
  simplest->add_option("--hi", o.hi)->required();
  simplest->add_option("--forbid", o.forbid)->delimiter(',');
  simplest->callback([&] {
    action = [&] {
      std::set<Rational> forbidden;
      for (const auto& s : o.forbid) forbidden.insert(Rational::parse(s));
      out << io::dump(
          {{"value", simplest_rational_in(Rational::parse(o.lo), Rational::parse(o.hi), forbidden).to_string()}});
      return kOk;
    };
  });

  auto* split = app.add_subcommand("split", "Smallest x in [lo, hi] with z = x + y, x <= y <= mu x");
  split->add_option("--z", o.z)->required();
  split->add_option("--lo", o.lo)->required();
  split->add_option("--hi", o.hi)->required();
  split->add_option("--mu", o.mu)->required();
  split->callback([&] {
    action = [&] {
      const auto s = find_split(o.z, to_int64(Rational::parse(o.lo).floor()), to_int64(Rational::parse(o.hi).floor()),
                                Rational::parse(o.mu));
      out << io::dump(s ? io::Json{{"x", s->x}, {"y", s->y}} : io::Json{{"split", nullptr}});
      return s ? kOk : kCheckFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const ConstructionFailure& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace fekete::cli
