#include "ramsplit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

#include "ramsplit/json_io.hpp"

namespace ramsplit::cli {

namespace {

using json_io::json;
using json_io::to_json;

constexpr std::uint64_t kProgressThreshold = 1'000'000;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematically negative answer: the payload still goes to stdout.
struct Outcome {
  json payload;
  std::optional<std::string> negative; // reason when the verdict is negative
};

void emit_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void emit(std::ostream& out, const json& payload, const std::string& format) {
  if (format == "json") {
    out << payload.dump() << '\n';
    return;
  }
  if (!payload.is_object()) {
    out << payload.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : payload.items())
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

std::string index_text(const json& one_based) {
  std::string s = "{";
  for (std::size_t i = 0; i < one_based.size(); ++i) s += (i ? "," : "") + one_based[i].dump();
  return s + "}";
}

struct MatrixArgs {
  std::string builtin;
  std::string matrix;

  void attach(CLI::App* app) {
    auto* b = app->add_option("--builtin", builtin, "clever3x3, allprimes4x3 or stacked:<d>");
    auto* m = app->add_option("--matrix", matrix, "matrix JSON, inline or a file path");
    b->excludes(m);
  }

  PirutkaCandidate load() const {
    if (!builtin.empty()) return builtin_matrix(builtin);
    if (!matrix.empty()) return PirutkaCandidate(json_io::matrix_from_json(json_io::load_payload(matrix)));
    throw UsageError("one of --builtin or --matrix is required");
  }
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pirutka matrices, dual-complex reduction and splitting certificates"};
  app.name("ramsplit");
  app.require_subcommand(1);
  app.fallthrough(); // inherited, so --format works after a subcommand
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // Set by the leaf subcommand that was parsed.
  std::function<Outcome()> action;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help) {
    return parent->add_subcommand(name, help);
  };

  // ---- pirutka ----
  auto* pirutka = app.add_subcommand("pirutka", "l-Pirutka matrices");
  pirutka->require_subcommand(1);

  MatrixArgs check_m;
  Int check_l = 0;
  auto* check = leaf(pirutka, "check", "decide l-Pirutka and report the least failing submatrix");
  check_m.attach(check);
  check->add_option("--prime,-l", check_l, "the prime l")->required();
  check->callback([&] {
    action = [&] {
      const auto report = is_pirutka(check_m.load(), PrimeModulus(check_l));
      Outcome o{to_json(report), std::nullopt};
      if (!report.verdict)
        o.negative = "not " + std::to_string(check_l) + "-Pirutka: rank deficient at I=" +
                     index_text(o.payload["witness"]["I"]) + " J=" + index_text(o.payload["witness"]["J"]);
      return o;
    };
  });

  std::size_t search_n = 0, search_d = 0;
  Int search_l = 0;
  SearchOptions search_opts;
  auto* search = leaf(pirutka, "search", "least l-Pirutka n x d matrix over {0..l-1}");
  search->add_option("--n", search_n, "rows")->required()->check(CLI::PositiveNumber);
  search->add_option("--d", search_d, "columns")->required()->check(CLI::PositiveNumber);
  search->add_option("--prime,-l", search_l, "the prime l")->required();
  search->add_option("--budget", search_opts.budget, "largest candidate space l^(nd) to accept")
      ->capture_default_str();
  search->add_option("--workers", search_opts.workers, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->callback([&] {
    action = [&] {
      const PrimeModulus l(search_l);
      std::uint64_t space = 1;
      for (std::size_t k = 0; k < search_n * search_d && space <= kProgressThreshold; ++k)
        space *= static_cast<std::uint64_t>(search_l);
      if (space > kProgressThreshold)
        err << json{{"progress", "search"}, {"n", search_n}, {"d", search_d}, {"l", search_l},
                  {"workers", search_opts.workers}}
                 .dump()
          << '\n';
      const auto result = exhaustive_search(search_n, search_d, l, search_opts);
      Outcome o{to_json(result), std::nullopt};
      if (!result.found)
        o.negative = "no " + std::to_string(search_n) + "x" + std::to_string(search_d) + " " +
                     std::to_string(search_l) + "-Pirutka matrix over {0.." + std::to_string(search_l - 1) + "}";
      return o;
    };
  });

  MatrixArgs bad_m;
  Int bad_bound = 1'000'000;
  auto* bad = leaf(pirutka, "bad-primes", "exact set of primes for which a matrix is not Pirutka");
  bad_m.attach(bad);
  bad->add_option("--bound", bad_bound, "trial-division bound for factoring minor gcds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bad->callback([&] { action = [&] { return Outcome{to_json(bad_primes(bad_m.load(), bad_bound)), std::nullopt}; }; });

  std::size_t construct_n = 0;
  Int construct_l = 0;
  auto* construct = leaf(pirutka, "construct", "column-by-column square construction");
  construct->add_option("--n", construct_n, "size")->required()->check(CLI::PositiveNumber);
  construct->add_option("--prime,-l", construct_l, "the prime l")->required();
  construct->callback([&] {
    action = [&] {
      const PrimeModulus l(construct_l);
      const auto t = greedy_construct(construct_n, l);
      Outcome o{{{"matrix", t ? to_json(t->matrix()) : json(nullptr)},
                 {"verified", t ? is_pirutka(*t, l).verdict : false}},
                std::nullopt};
      if (!t) o.negative = "construction failed for n=" + std::to_string(construct_n);
      return o;
    };
  });

  Int bound_l = 0;
  std::size_t bound_d = 0;
  auto* bound = leaf(pirutka, "bound", "exponent N+1 from the built-in Pirutka matrices");
  bound->add_option("--prime,-l", bound_l, "the prime l")->required();
  bound->add_option("--dim", bound_d, "dimension d (the matrices have d+1 columns)")
      ->required()
      ->check(CLI::PositiveNumber);
  bound->callback([&] {
    action = [&] { return Outcome{to_json(bound_exponent(PrimeModulus(bound_l), bound_d)), std::nullopt}; };
  });

  // ---- complex ----
  auto* complex = app.add_subcommand("complex", "simplicial complexes");
  complex->require_subcommand(1);

  std::string sub_complex, sub_simplex;
  bool sub_bary = false;
  auto* subdivide = leaf(complex, "subdivide", "star subdivision at a simplex, or barycentric");
  subdivide->add_option("--complex", sub_complex, "complex JSON")->required();
  auto* sub_s = subdivide->add_option("--simplex", sub_simplex, "simplex JSON array; [] changes nothing");
  auto* sub_b = subdivide->add_flag("--barycentric", sub_bary, "full barycentric subdivision");
  sub_s->excludes(sub_b);
  subdivide->callback([&] {
    action = [&] {
      const auto c = json_io::complex_from_json(json_io::load_payload(sub_complex));
      if (sub_bary) return Outcome{to_json(barycentric(c)), std::nullopt};
      if (sub_simplex.empty()) throw UsageError("one of --simplex or --barycentric is required");
      const json s = json_io::load_payload(sub_simplex);
      if (s.is_array() && s.empty()) return Outcome{to_json(c), std::nullopt};
      enforce_desk_limits(c);
      return Outcome{to_json(star_subdivision(c, json_io::simplex_from_json(s))), std::nullopt};
    };
  });

  std::string order_in;
  auto* order = leaf(complex, "order", "order complex of the face poset");
  order->add_option("--complex", order_in, "complex JSON")->required();
  order->callback([&] {
    action = [&] {
      return Outcome{to_json(order_complex(json_io::complex_from_json(json_io::load_payload(order_in)))),
                     std::nullopt};
    };
  });

  std::string iso_in;
  std::size_t iso_random = 0, iso_max_vertices = 6;
  int iso_max_dim = 3;
  std::uint64_t iso_seed = 0;
  auto* iso = leaf(complex, "iso", "check barycentric subdivision against the order complex");
  auto* iso_c = iso->add_option("--complex", iso_in, "complex JSON");
  auto* iso_r = iso->add_option("--random", iso_random, "check this many random complexes instead");
  iso_c->excludes(iso_r);
  iso->add_option("--seed", iso_seed, "seed for --random")->capture_default_str();
  iso->add_option("--max-vertices", iso_max_vertices, "vertex cap for --random")
      ->check(CLI::Range(std::size_t{1}, kMaxVertices))
      ->capture_default_str();
  iso->add_option("--max-dim", iso_max_dim, "dimension cap for --random")
      ->check(CLI::Range(0, kMaxDimension))
      ->capture_default_str();
  iso->callback([&] {
    action = [&] {
      if (!iso_in.empty()) {
        const auto r = check_natural_iso(json_io::complex_from_json(json_io::load_payload(iso_in)));
        Outcome o{to_json(r), std::nullopt};
        if (!r.isomorphic) o.negative = "natural map is not an isomorphism";
        return o;
      }
      if (iso_random == 0) throw UsageError("one of --complex or --random is required");
      std::mt19937_64 rng(iso_seed);
      json failures = json::array();
      for (std::size_t trial = 0; trial < iso_random; ++trial) {
        const auto c = random_complex(rng, iso_max_vertices, iso_max_dim);
        const auto r = check_natural_iso(c);
        if (!r.isomorphic)
          failures.push_back({{"trial", trial}, {"complex", to_json(c)}, {"counterexample", to_json(r)["counterexample"]}});
      }
      Outcome o{{{"seed", iso_seed}, {"trials", iso_random}, {"isomorphic", failures.empty()}, {"failures", failures}},
                std::nullopt};
      if (!failures.empty()) o.negative = std::to_string(failures.size()) + " random complexes failed";
      return o;
    };
  });

  std::string color_in;
  bool color_base = false;
  auto* color = leaf(complex, "color", "colour an order complex by stratum dimension");
  color->add_option("--complex", color_in, "order complex JSON")->required();
  color->add_flag("--from-base", color_base, "the input is the base complex; take its order complex first");
  color->callback([&] {
    action = [&] {
      auto c = json_io::complex_from_json(json_io::load_payload(color_in));
      if (color_base) c = order_complex(c);
      const auto coloring = color_by_dimension(c);
      Outcome o{to_json(coloring), std::nullopt};
      if (!coloring.valid) o.negative = "some simplex repeats a colour";
      return o;
    };
  });

  // ---- dual ----
  auto* dual = app.add_subcommand("dual", "dual complexes and blowups");
  dual->require_subcommand(1);

  std::string blow_in, blow_simplex;
  auto* blow = leaf(dual, "blowup", "blow up one stratum");
  blow->add_option("--dual", blow_in, "dual complex JSON")->required();
  blow->add_option("--simplex", blow_simplex, "stratum as a JSON array; [] changes nothing")->required();
  blow->callback([&] {
    action = [&] {
      const auto d = json_io::dual_from_json(json_io::load_payload(blow_in));
      const json s = json_io::load_payload(blow_simplex);
      if (s.is_array() && s.empty()) return Outcome{to_json(d), std::nullopt};
      return Outcome{to_json(blowup(d, json_io::simplex_from_json(s))), std::nullopt};
    };
  });

  std::string seq_in;
  auto* sequence = leaf(dual, "sequence", "blow up all strata, deepest first");
  sequence->add_option("--dual", seq_in, "dual complex JSON")->required();
  sequence->callback([&] {
    action = [&] {
      const auto d = json_io::dual_from_json(json_io::load_payload(seq_in));
      enforce_desk_limits(d.complex());
      return Outcome{to_json(stratified_blowup_sequence(d)), std::nullopt};
    };
  });

  std::string reduce_in;
  std::optional<int> reduce_dim;
  bool reduce_pad = false;
  auto* reduce = leaf(dual, "reduce", "presentation of length at most the ambient dimension");
  reduce->add_option("--dual", reduce_in, "dual complex JSON")->required();
  reduce->add_option("--dim", reduce_dim, "ambient dimension (default: the payload's)");
  reduce->add_flag("--pad", reduce_pad, "pad with dummy divisors up to the ambient dimension");
  reduce->callback([&] {
    action = [&] {
      const auto d = json_io::dual_from_json(json_io::load_payload(reduce_in));
      const int dim = reduce_dim.value_or(d.ambient_dim());
      const auto p = reduce_presentation(d, dim, PresentationOptions{reduce_pad});
      const auto blown = stratified_blowup_sequence(d).result;
      json payload = to_json(p);
      payload["ambient_dim"] = dim;
      payload["independent"] = groups_are_independent(blown, p);
      return Outcome{payload, std::nullopt};
    };
  });

  // ---- split ----
  auto* split = app.add_subcommand("split", "symbol classes and splitting certificates");
  split->require_subcommand(1);

  MatrixArgs cert_m;
  Int cert_l = 0;
  std::string cert_stratum;
  std::size_t cert_j0 = 0;
  auto* certify = leaf(split, "certify", "splitting certificate at one stratum point");
  cert_m.attach(certify);
  certify->add_option("--prime,-l", cert_l, "the prime l")->required();
  certify->add_option("--stratum", cert_stratum, "{\"J\": [...], \"Iprime\": [...]}, 1-based")->required();
  certify->add_option("--j0", cert_j0, "distinguished column in J, 1-based")->required()->check(CLI::PositiveNumber);
  certify->callback([&] {
    action = [&] {
      const auto t = cert_m.load();
      const PrimeModulus l(cert_l);
      const auto z = json_io::stratum_from_json(json_io::load_payload(cert_stratum), t.d());
      json payload{{"stratum", to_json(z)}, {"certificate", nullptr}};
      try {
        payload["certificate"] = to_json(find_certificate(t, l, z, cert_j0 - 1));
      } catch (const NotPirutkaError& e) {
        return Outcome{payload, std::string(e.what())};
      }
      return Outcome{payload, std::nullopt};
    };
  });

  MatrixArgs verify_m;
  Int verify_l = 0;
  std::string verify_in;
  auto* verify = leaf(split, "verify", "re-check a certificate");
  verify_m.attach(verify);
  verify->add_option("--prime,-l", verify_l, "the prime l")->required();
  verify->add_option("--certificate", verify_in, "{\"stratum\": ..., \"certificate\": ...} as printed by certify")
      ->required();
  verify->callback([&] {
    action = [&] {
      const auto t = verify_m.load();
      const PrimeModulus l(verify_l);
      const json in = json_io::load_payload(verify_in);
      if (!in.is_object() || !in.contains("stratum") || !in.contains("certificate"))
        throw InputError("certificate payload needs \"stratum\" and \"certificate\"");
      const auto z = json_io::stratum_from_json(in["stratum"], t.d());
      const auto r = verify_certificate(json_io::certificate_from_json(in["certificate"]), t, l, z);
      Outcome o{{{"valid", r.ok}, {"reason", fault_code(r.fault)}}, std::nullopt};
      if (!r.ok) o.negative = std::string("certificate rejected: ") + fault_code(r.fault);
      return o;
    };
  });

  MatrixArgs uni_m;
  Int uni_l = 0;
  bool uni_brief = false;
  auto* universal = leaf(split, "universal", "certificates for every worst-case stratum point");
  uni_m.attach(universal);
  universal->add_option("--prime,-l", uni_l, "the prime l")->required();
  universal->add_flag("--brief", uni_brief, "omit the list of attempts");
  universal->callback([&] {
    action = [&] {
      const auto t = uni_m.load();
      const auto report = universal_split_check(t, PrimeModulus(uni_l), t.d());
      json payload = to_json(report);
      if (uni_brief) payload.erase("attempts");
      Outcome o{payload, std::nullopt};
      if (!report.splits) {
        const auto& f = report.attempts[*report.first_failure];
        o.negative = "no certificate at J=" + index_text(json_io::one_based(f.j)) +
                     " j0=" + std::to_string(f.j0 + 1) + " I'=" + index_text(json_io::one_based(f.i_prime));
      }
      return o;
    };
  });

  std::string res_in;
  std::size_t res_k = 0;
  auto* residue = leaf(split, "residue", "residue of a class along x_k");
  residue->add_option("--symbol", res_in, "symbol class JSON")->required();
  residue->add_option("--k", res_k, "coordinate, 1-based")->required()->check(CLI::PositiveNumber);
  residue->callback([&] {
    action = [&] {
      json payload = to_json(residue_along(json_io::symbol_from_json(json_io::load_payload(res_in)), res_k - 1));
      payload["k"] = res_k;
      return Outcome{payload, std::nullopt};
    };
  });

  std::string pull_in;
  std::vector<std::size_t> pull_coords;
  auto* pullback = leaf(split, "pullback", "adjoin l-th roots of some coordinates");
  pullback->add_option("--symbol", pull_in, "symbol class JSON")->required();
  pullback->add_option("--coords", pull_coords, "1-based coordinates, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  pullback->callback([&] {
    action = [&] {
      std::vector<std::size_t> s;
      for (auto c : pull_coords) s.push_back(c - 1);
      return Outcome{to_json(kummer_pullback(json_io::symbol_from_json(json_io::load_payload(pull_in)), s)),
                     std::nullopt};
    };
  });

  std::string norm_in;
  auto* normalize = leaf(split, "normalize", "expand raw symbols into normal form");
  normalize->add_option("--symbols", norm_in, "raw symbol JSON")->required();
  normalize->callback([&] {
    action = [&] { return Outcome{to_json(json_io::normal_form_from_json(json_io::load_payload(norm_in))), std::nullopt}; };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  }

  if (!action) {
    emit_error(err, "usage", "no command given");
    return kUsage;
  }
  try {
    const Outcome o = action();
    emit(out, o.payload, format);
    if (o.negative) {
      emit_error(err, "negative", *o.negative);
      return kNegative;
    }
    return kSuccess;
  } catch (const UsageError& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  } catch (const BudgetExceeded& e) {
    emit_error(err, "budget", e.what());
    return kBudget;
  } catch (const InputError& e) {
    emit_error(err, "invalid_input", e.what());
    return kInvalidInput;
  } catch (const json_io::json::exception& e) {
    emit_error(err, "invalid_input", e.what());
    return kInvalidInput;
  }
}

} // namespace ramsplit::cli
