// reluvol: exact lattice-polytope volumes, sum-union expressions and ReLU
// network depth checks. Every command prints one JSON document on stdout.
//
// Exit codes: 0 holds/true, 1 fails/refuted, 2 inapplicable, 3 error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "reluvol/depth_oracle.hpp"
#include "reluvol/json_io.hpp"
#include "reluvol/volume_engine.hpp"

using namespace reluvol;
using json_io::json;
using json_io::to_json;

namespace {

enum Exit { kHolds = 0, kFails = 1, kInapplicable = 2, kError = 3 };

int emit(const json& j, int code) {
  std::cout << j.dump(2) << "\n";
  return code;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::holds: return kHolds;
    case Verdict::fails: return kFails;
    case Verdict::inapplicable: return kInapplicable;
  }
  return kError;
}

LatticePolytope load_polytope(const std::string& path) { return json_io::polytope_from_json(json_io::load_file(path)); }

std::vector<LatticePolytope> load_polytopes(const std::vector<std::string>& paths) {
  std::vector<LatticePolytope> out;
  for (const auto& p : paths) out.push_back(load_polytope(p));
  return out;
}

RatVec parse_vector(const std::string& text) {
  RatVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(Rational::parse(std::string_view(text).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json rational_vector(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json bigint_vector(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json report_json(const InvariantReport& r) {
  json faces = json::array();
  for (const auto& f : r.faces)
    faces.push_back(json{{"face", f.index}, {"vertices", to_json(f.face)["vertices"]}, {"volume", to_json(f.volume)},
                         {"residue", to_json(f.residue)}});
  json out{{"claim", "Vol_{p^k}(F) = 0 mod p for every p^k-dimensional face F"},
           {"p", r.p},
           {"k", r.k},
           {"d", r.d},
           {"faces", faces},
           {"verdict", verdict_name(r.verdict)}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

json bound_json(const DepthBoundReport& r) {
  json out{{"n", r.n}};
  out["N"] = r.base ? json(*r.base) : json("Z");
  out["p"] = r.p;
  out["k_lo"] = r.k_lo;
  out["k_hi"] = r.k_hi;
  out["notes"] = r.notes;
  return out;
}

json obstruction_json(const ObstructionCertificate& c) {
  json out{{"claim", "h_P is not computed by an integer network with k hidden layers"},
           {"polytope", to_json(c.polytope)},
           {"d", c.d},
           {"t", c.t},
           {"p", c.p},
           {"k", c.claimed_k},
           {"verdict", obstruction_name(c.verdict)},
           {"reason", c.reason}};
  if (c.verdict != ObstructionVerdict::inapplicable) {
    out["volume"] = to_json(c.volume);
    out["residue"] = to_json(c.residue);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice-polytope volumes and ReLU depth certificates"};
  app.require_subcommand(1);
  std::function<int()> run;

  // vol
  std::string poly_path;
  std::optional<std::size_t> dim_opt;
  auto* vol = app.add_subcommand("vol", "normalized volume Vol_d");
  vol->add_option("poly", poly_path, "polytope JSON")->required();
  vol->add_option("-d", dim_opt, "dimension d (default dim P)");
  vol->callback([&] {
    run = [&] {
      const auto p = load_polytope(poly_path);
      const std::size_t d = dim_opt.value_or(p.dim());
      return emit(json{{"d", d}, {"dim", p.dim()}, {"volume", to_json(normalized_volume(p, d))},
                       {"method", "triangulation"}},
                  kHolds);
    };
  });

  // count
  std::optional<std::uint64_t> tmax;
  auto* count = app.add_subcommand("count", "lattice points and the Ehrhart volume oracle");
  count->add_option("poly", poly_path, "polytope JSON")->required();
  count->add_option("--tmax", tmax, "largest dilation counted (default dim + 1)");
  count->callback([&] {
    run = [&] {
      const auto p = load_polytope(poly_path);
      const std::size_t d = p.dim();
      json out{{"lattice_points", to_json(lattice_points_count(p))}, {"dim", d}};
      if (d == 0) return emit(out, kHolds);
      const auto fit = ehrhart_fit(p, d, tmax.value_or(d + 1));
      const auto tri = normalized_volume(p, d);
      out["counts"] = bigint_vector(fit.counts);
      out["differences"] = bigint_vector(fit.differences);
      out["volume_oracle"] = to_json(fit.volume);
      out["volume_triangulation"] = to_json(tri);
      out["agree"] = fit.volume == tri;
      return emit(out, fit.volume == tri ? kHolds : kFails);
    };
  });

  // mixedvol
  std::vector<std::string> paths;
  auto* mixed = app.add_subcommand("mixedvol", "mixed volume V(P_1, ..., P_d)");
  mixed->add_option("polys", paths, "polytope JSON files, one per argument")->required();
  mixed->callback([&] {
    run = [&] {
      const auto polys = load_polytopes(paths);
      return emit(json{{"d", polys.size()}, {"mixed_volume", to_json(mixed_volume(polys))}}, kHolds);
    };
  });

  // mink
  std::string path_a, path_b;
  auto* mink = app.add_subcommand("mink", "Minkowski sum");
  mink->add_option("p", path_a)->required();
  mink->add_option("q", path_b)->required();
  mink->callback([&] {
    run = [&] { return emit(to_json(minkowski_sum(load_polytope(path_a), load_polytope(path_b))), kHolds); };
  });

  // hull
  auto* hull_cmd = app.add_subcommand("hull", "convex hull of lattice points");
  hull_cmd->add_option("points", path_a)->required();
  hull_cmd->callback([&] {
    run = [&] { return emit(to_json(hull(json_io::points_from_json(json_io::load_file(path_a)))), kHolds); };
  });

  // face
  std::string direction;
  auto* face_cmd = app.add_subcommand("face", "face maximizing a direction");
  face_cmd->add_option("p", path_a)->required();
  face_cmd->add_option("--u", direction, "comma-separated rationals")->required();
  face_cmd->callback([&] {
    run = [&] {
      const auto u = parse_vector(direction);
      return emit(to_json(face(load_polytope(path_a), u)), kHolds);
    };
  });

  // binomial
  auto* binom = app.add_subcommand("binomial", "Vol_d(A + B) as a sum of mixed volumes");
  binom->add_option("a", path_a)->required();
  binom->add_option("b", path_b)->required();
  binom->add_option("-d", dim_opt, "dimension (default dim(A + B))");
  binom->callback([&] {
    run = [&] {
      const auto a = load_polytope(path_a), b = load_polytope(path_b);
      const std::size_t d = dim_opt.value_or(minkowski_sum(a, b).dim());
      const auto e = binomial_expansion_check(a, b, d);
      return emit(json{{"d", d},
                       {"terms", bigint_vector(e.terms)},
                       {"total", to_json(e.total)},
                       {"volume_of_sum", to_json(e.volume_of_sum)},
                       {"verdict", e.holds ? "holds" : "fails"}},
                  e.holds ? kHolds : kFails);
    };
  });

  // check ...
  auto* check = app.add_subcommand("check", "divisibility and invariant checks");
  check->require_subcommand(1);
  std::uint64_t prime = 0;
  std::optional<std::uint64_t> t_opt;
  auto* modular = check->add_subcommand("modular", "Vol_d of a sum is additive mod p for d = p^t");
  modular->add_option("parts", paths)->required();
  modular->add_option("-p", prime)->required();
  auto* t_flag = modular->add_option("-t", t_opt, "exponent t with d = p^t");
  modular->add_option("-d", dim_opt, "dimension d (default dim of the sum)")->excludes(t_flag);
  modular->callback([&] {
    run = [&] {
      const auto parts = load_polytopes(paths);
      Certificate c = t_opt ? modular_additivity_check(parts, prime, *t_opt)
                            : modular_additivity_check_dim(parts, prime, dim_opt.value_or(minkowski_sum(parts).dim()));
      return emit(to_json(c), verdict_exit(c.verdict));
    };
  });
  auto* join = check->add_subcommand("join", "Vol of a join is divisible by the product of volumes");
  join->add_option("a", path_a)->required();
  join->add_option("b", path_b)->required();
  join->callback([&] {
    run = [&] {
      const auto c = join_divisibility_check(load_polytope(path_a), load_polytope(path_b));
      return emit(to_json(c), verdict_exit(c.verdict));
    };
  });
  auto* su_inv = check->add_subcommand("su-invariant", "p-divisibility of face volumes of an SU^k polytope");
  su_inv->add_option("expr", path_a)->required();
  su_inv->add_option("-p", prime)->required();
  su_inv->callback([&] {
    run = [&] {
      const auto r = p_invariant_check(json_io::su_from_json(json_io::load_file(path_a)), prime);
      return emit(report_json(r), verdict_exit(r.verdict));
    };
  });
  std::size_t face_dim = 0;
  std::string modulus;
  auto* prop = check->add_subcommand("propagation", "divisible face volumes force a divisible volume");
  prop->add_option("p", path_a)->required();
  prop->add_option("-s", face_dim, "face dimension")->required();
  prop->add_option("-m", modulus, "modulus")->required();
  prop->add_option("-d", dim_opt, "dimension (default dim P)");
  prop->callback([&] {
    run = [&] {
      const auto p = load_polytope(path_a);
      const auto c = face_volume_propagation_check(p, face_dim, dim_opt.value_or(p.dim()), parse_bigint(modulus));
      return emit(to_json(c), verdict_exit(c.verdict));
    };
  });

  // su ...
  auto* su = app.add_subcommand("su", "sum-union expressions");
  su->require_subcommand(1);
  auto* su_eval = su->add_subcommand("eval", "evaluate to a polytope");
  su_eval->add_option("expr", path_a)->required();
  su_eval->callback([&] {
    run = [&] {
      const auto e = json_io::su_from_json(json_io::load_file(path_a));
      json out = to_json(evaluate(e));
      out["depth"] = e.depth();
      return emit(out, kHolds);
    };
  });
  auto* su_face = su->add_subcommand("face", "face expression for a direction");
  su_face->add_option("expr", path_a)->required();
  su_face->add_option("--u", direction)->required();
  su_face->callback([&] {
    run = [&] {
      const auto e = json_io::su_from_json(json_io::load_file(path_a));
      const auto u = parse_vector(direction);
      const auto f = face_expr(e, u);
      const auto direct = face(evaluate(e), u);
      const auto via = evaluate(f);
      return emit(json{{"expr", to_json(f)},
                       {"depth", f.depth()},
                       {"polytope", to_json(via)},
                       {"matches_direct_face", via == direct}},
                  via == direct ? kHolds : kFails);
    };
  });
  RandomSUOptions ropt;
  auto* su_random = su->add_subcommand("random", "random expression of exact depth k");
  su_random->add_option("-k", ropt.depth, "depth")->required();
  su_random->add_option("-n", ropt.n, "ambient dimension")->required();
  su_random->add_option("--budget", ropt.budget, "summands per sum node")->capture_default_str();
  su_random->add_option("--lo", ropt.lo, "least coordinate")->capture_default_str();
  su_random->add_option("--hi", ropt.hi, "largest coordinate")->capture_default_str();
  su_random->add_option("--seed", ropt.seed, "generator seed")->capture_default_str();
  su_random->callback([&] { run = [&] { return emit(to_json(random_su(ropt)), kHolds); }; });

  // net ...
  auto* net = app.add_subcommand("net", "ReLU networks");
  net->require_subcommand(1);
  auto load_net = [](const std::string& p) { return json_io::network_from_json(json_io::load_file(p)); };
  std::string x_text;
  auto* net_eval = net->add_subcommand("eval", "evaluate at a rational point");
  net_eval->add_option("net", path_a)->required();
  net_eval->add_option("--x", x_text, "comma-separated rationals")->required();
  net_eval->callback([&] {
    run = [&] {
      const auto x = parse_vector(x_text);
      return emit(json{{"x", rational_vector(x)}, {"value", to_json(evaluate(load_net(path_a), x))}}, kHolds);
    };
  });
  std::optional<std::string> multiplier;
  auto* net_clear = net->add_subcommand("clear", "integer network computing M^{k+1} f");
  net_clear->add_option("net", path_a)->required();
  net_clear->add_option("-M", multiplier, "multiplier (default: common denominator of the weights)");
  net_clear->callback([&] {
    run = [&] {
      const auto n = load_net(path_a);
      BigInt m = 1;
      if (multiplier) {
        m = parse_bigint(*multiplier);
      } else {
        RatVec all;
        for (const auto& layer : n.layers())
          for (const auto& row : layer.weights) all.insert(all.end(), row.begin(), row.end());
        m = common_denominator(all);
      }
      json out = to_json(clear_denominators(n, m));
      out["M"] = to_json(m);
      out["output_scale"] = to_json(pow(m, n.hidden_layers() + 1));
      return emit(out, kHolds);
    };
  });
  auto* net_compile = net->add_subcommand("compile", "polytope pair (A, B) with f = h_B - h_A");
  net_compile->add_option("net", path_a)->required();
  net_compile->callback([&] {
    run = [&] {
      const auto pair = compile_to_polytopes(load_net(path_a));
      return emit(json{{"A", to_json(pair.a)},
                       {"B", to_json(pair.b)},
                       {"depth_A", pair.a.depth()},
                       {"depth_B", pair.b.depth()},
                       {"polytope_A", to_json(evaluate(pair.a))},
                       {"polytope_B", to_json(evaluate(pair.b))}},
                  kHolds);
    };
  });
  auto* net_equal = net->add_subcommand("equal", "exact function equality");
  net_equal->add_option("f", path_a)->required();
  net_equal->add_option("g", path_b)->required();
  net_equal->callback([&] {
    run = [&] {
      const auto c = functions_equal(load_net(path_a), load_net(path_b));
      return emit(to_json(c), verdict_exit(c.verdict));
    };
  });
  std::optional<std::string> lambda_text;
  auto* verify_max = net->add_subcommand("verify-max", "whether the network computes lambda * max{0, x_1, ..., x_n}");
  verify_max->add_option("net", path_a)->required();
  verify_max->add_option("--lambda", lambda_text, "scale (default 2^scale_log2)");
  verify_max->callback([&] {
    run = [&] {
      const auto n = load_net(path_a);
      const BigInt lambda = lambda_text ? parse_bigint(*lambda_text) : pow(BigInt(2), n.scale_log2());
      const auto c = represents_scaled_simplex(n, lambda);
      json out = to_json(c);
      out["hidden_layers"] = n.hidden_layers();
      return emit(out, verdict_exit(c.verdict));
    };
  });
  std::size_t n_inputs = 0;
  auto* net_max = net->add_subcommand("max", "integer network for max{0, x_1, ..., x_n}");
  net_max->add_option("-n", n_inputs)->required();
  net_max->callback([&] { run = [&] { return emit(to_json(max_network(n_inputs)), kHolds); }; });
  auto* refute = net->add_subcommand("refute", "test the claim that a network computes max{0, x_1, ..., x_n}");
  refute->add_option("net", path_a)->required();
  refute->add_option("-n", n_inputs, "number of inputs of the claimed maximum")->required();
  refute->add_option("--lambda", lambda_text, "scale, or \"auto\" for (N^t)^{k+1}");
  refute->callback([&] {
    run = [&] {
      std::optional<BigInt> lambda;
      if (lambda_text && *lambda_text != "auto") lambda = parse_bigint(*lambda_text);
      const auto r = refute_network_claim(load_net(path_a), n_inputs, lambda);
      json out{{"claim", "net computes F_" + std::to_string(n_inputs)},
               {"verdict", r.verdict == Verdict::fails ? "refuted" : verdict_name(r.verdict)},
               {"summary", r.summary},
               {"hidden_layers", r.k},
               {"t", r.t},
               {"M", to_json(r.multiplier)},
               {"lambda", to_json(r.lambda)},
               {"bound", bound_json(r.bound)},
               {"representation", to_json(r.representation)}};
      if (r.obstruction) out["obstruction"] = obstruction_json(*r.obstruction);
      return emit(out, verdict_exit(r.verdict));
    };
  });

  // bound, growth, obstruction
  std::string base_text = "10";
  auto* bound = app.add_subcommand("bound", "depth bounds for max{0, x_1, ..., x_n} with N-ary weights");
  bound->add_option("-n", n_inputs, "number of inputs")->required();
  bound->add_option("-N", base_text, "weight base, or Z for integers")->capture_default_str();
  bound->callback([&] {
    run = [&] {
      const auto r = base_text == "Z" ? lower_bound_integer(n_inputs)
                                      : lower_bound_nary(n_inputs, parse_bigint(base_text).get_ui());
      return emit(bound_json(r), kHolds);
    };
  });
  auto* growth = app.add_subcommand("growth", "functions needing more depth as inputs grow");
  growth->add_option("-n", n_inputs, "number of inputs")->required();
  growth->add_option("-N", base_text, "weight base")->capture_default_str();
  growth->callback([&] {
    run = [&] {
      const std::uint64_t base = parse_bigint(base_text).get_ui();
      json rows = json::array();
      for (const auto& r : gradual_growth_table(n_inputs, base))
        rows.push_back(json{{"k", r.k},
                            {"function", "F_" + std::to_string(r.inputs)},
                            {"not_representable_with", r.not_with},
                            {"representable_with", r.with}});
      return emit(json{{"n", n_inputs}, {"N", base}, {"p", smallest_prime_not_dividing(base)}, {"rows", rows}},
                  kHolds);
    };
  });
  std::size_t claimed_k = 0;
  auto* obstruct = app.add_subcommand("obstruct", "volume obstruction for h_P at k hidden layers");
  obstruct->add_option("p", path_a)->required();
  obstruct->add_option("-k", claimed_k)->required();
  obstruct->add_option("--prime", prime)->required();
  obstruct->callback([&] {
    run = [&] {
      const auto c = volume_obstruction_check(load_polytope(path_a), claimed_k, prime);
      const int code = c.verdict == ObstructionVerdict::obstructed   ? kFails
                       : c.verdict == ObstructionVerdict::inapplicable ? kInapplicable
                                                                       : kHolds;
      return emit(obstruction_json(c), code);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return emit(json{{"error", e.what()}}, kError);
  }

  try {
    return run();
  } catch (const PreconditionError& e) {
    return emit(json{{"verdict", "inapplicable"}, {"reason", e.what()}}, kInapplicable);
  } catch (const std::exception& e) {
    return emit(json{{"error", e.what()}}, kError);
  }
}
