#include "zp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <fstream>
#include <sstream>

#include "zp/elemdiv.hpp"
#include "zp/error.hpp"
#include "zp/expander.hpp"
#include "zp/finquot.hpp"
#include "zp/fundom.hpp"
#include "zp/hecke.hpp"

namespace zp::cli {

namespace {

using nlohmann::json;

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json rat_json(const Rat& r) {
  if (r.is_integer()) return int_json(r.num());
  return r.to_string();
}

json int_list(const std::vector<Int>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

std::vector<RatMatrix> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::vector<RatMatrix> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(RatMatrix::parse(line));
  }
  return out;
}

GeneratorSet read_generators(const std::string& path, std::size_t expected_g) {
  std::vector<SimilitudeElement> elems;
  for (auto& m : read_matrix_file(path)) elems.emplace_back(std::move(m));
  for (const auto& e : elems) {
    if (e.genus() != expected_g) throw Error(ErrorCode::DimensionMismatch, "generator file genus does not match g");
  }
  return GeneratorSet::symmetric_closure(expected_g, elems);
}

std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Exact symplectic elementary divisors, Hecke degrees, finite quotients and expander scans"};
  app.require_subcommand(1);
  int threads = 1;
  std::string format = "auto";
  app.add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"auto", "json", "csv"}));

  std::string matrix_text;
  auto* elemdiv = app.add_subcommand("elemdiv", "symplectic elementary divisor decomposition");
  elemdiv->add_option("matrix", matrix_text, "matrix text, e.g. 0,-1;6,0")->required();

  auto* complexity = app.add_subcommand("complexity", "complexity N(M) and minimum over the double coset");
  complexity->add_option("matrix", matrix_text)->required();

  bool want_reps = false;
  std::uint64_t orbit_cap = 10'000'000;
  auto* hecke = app.add_subcommand("hecke-index", "[Γ : Γ_γ] by lattice-orbit enumeration");
  hecke->add_option("matrix", matrix_text)->required();
  hecke->add_flag("--reps", want_reps, "emit coset representatives");
  hecke->add_option("--cap", orbit_cap, "orbit size cap");

  std::size_t g = 1;
  unsigned q = 2;
  std::uint64_t closure_cap = 10'000'000;
  std::string gens_path;
  auto* finquot = app.add_subcommand("finquot", "finite symplectic quotients");
  finquot->require_subcommand(1);
  auto* order = finquot->add_subcommand("order", "|Sp_2g(Z/qZ)|");
  order->add_option("g", g)->required();
  order->add_option("q", q)->required();
  auto* surjective = finquot->add_subcommand("surjective", "closure of the standard generators mod q");
  surjective->add_option("g", g)->required();
  surjective->add_option("q", q)->required();
  surjective->add_option("--cap", closure_cap);
  auto* gamma_index = finquot->add_subcommand("gamma-index", "[Sp_2g(Z/νZ) : π_ν(Γ_γ)]");
  gamma_index->add_option("matrix", matrix_text)->required();
  gamma_index->add_option("--cap", closure_cap);
  auto* image_index = finquot->add_subcommand("image-index", "index of the image of a generated subgroup");
  image_index->add_option("g", g)->required();
  image_index->add_option("q", q)->required();
  image_index->add_option("--gens", gens_path, "generator file, one matrix per line")->required();
  image_index->add_option("--cap", closure_cap);

  unsigned b = 2, qmax = 10;
  std::size_t dense_limit = 5000;
  auto* scan = app.add_subcommand("expander-scan", "spectral gap and sweep expansion over b-th-power-free q");
  scan->add_option("--g", g);
  scan->add_option("--b", b)->check(CLI::Range(2u, 64u));
  scan->add_option("--qmax", qmax);
  scan->add_option("--gens", gens_path, "generator file (default: standard generators)");
  scan->add_option("--cap", closure_cap);
  scan->add_option("--dense-limit", dense_limit);

  double re = 0.0, im = 1.0;
  auto* reduce = app.add_subcommand("reduce-tau", "reduce a point into the fundamental domain");
  reduce->add_option("--re", re)->required();
  reduce->add_option("--im", im)->required();

  std::string family_path;
  auto* height_scan = app.add_subcommand("height-scan", "height versus complexity over a family of γ");
  height_scan->add_option("--family", family_path, "file with one 2x2 matrix per line")->required();
  height_scan->add_option("--re", re, "Re τ₀");
  height_scan->add_option("--im", im, "Im τ₀");

  CommandResult result;
  std::vector<const char*> argv{"zph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int rc = app.exit(e, out, err);
    result.payload = out.str();
    if (!err.str().empty()) result.diagnostics.push_back(err.str());
    if (rc != 0) {
      result.status = Status::Error;
      result.exit_code = 2;
      result.code = "USAGE";
      result.diagnostics.push_back(app.help());
    }
    return result;
  }

#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif

  try {
    if (*elemdiv) {
      const auto m = SimilitudeElement::parse(matrix_text);
      const auto f = symplectic_elementary_divisors(m);
      result.payload = dump({{"a", int_list(f.a)},
                             {"b", int_list(f.b)},
                             {"nu", rat_json(m.nu())},
                             {"kappa", f.kappa.matrix().to_string()},
                             {"lambda", f.lambda.matrix().to_string()},
                             {"checked", is_valid_decomposition(m, f)}});
    } else if (*complexity) {
      const auto m = SimilitudeElement::parse(matrix_text);
      result.payload = dump({{"N", int_json(complexity_N(m))},
                             {"N_min", int_json(min_complexity_double_coset(m))},
                             {"nu", rat_json(m.nu())}});
    } else if (*hecke) {
      const auto m = SimilitudeElement::parse(matrix_text);
      HeckeOptions opts;
      opts.cap = orbit_cap;
      json out = {{"index", hecke_index(m, opts)}, {"nu", rat_json(m.nu())}};
      if (want_reps) {
        json reps = json::array();
        for (const auto& r : coset_representatives(m, opts)) reps.push_back(r.matrix().to_string());
        out["reps"] = reps;
      }
      result.payload = dump(out);
    } else if (*finquot) {
      ClosureOptions copts;
      copts.cap = closure_cap;
      if (*order) {
        result.payload = dump({{"g", g}, {"q", q}, {"order", int_json(group_order(g, q))}});
      } else if (*surjective) {
        const auto s = surjectivity_check(g, q, copts);
        result.payload = dump({{"g", g},
                               {"q", q},
                               {"surjective", s.surjective},
                               {"closure_size", s.closure_size},
                               {"group_order", int_json(s.group_order)}});
      } else if (*gamma_index) {
        const auto m = SimilitudeElement::parse(matrix_text);
        QuotientOptions qopts;
        qopts.closure = copts;
        result.payload = dump({{"index", quotient_index_of_gamma_gamma(m, qopts)}, {"nu", rat_json(m.nu())}});
      } else if (*image_index) {
        const auto gens = read_generators(gens_path, g);
        const auto table = bounded_image_experiment(gens, {q}, copts);
        const auto& row = table.rows.front();
        if (row.skipped) throw Error(ErrorCode::ClosureBudgetExceeded, "closure over budget for q = " + std::to_string(q));
        result.payload = dump({{"g", g},
                               {"q", q},
                               {"subgroup_order", row.subgroup_order},
                               {"group_order", int_json(row.group_order)},
                               {"index", int_json(row.index)}});
      }
    } else if (*scan) {
      const GeneratorSet gens = gens_path.empty() ? standard_generators(g) : read_generators(gens_path, g);
      ScanOptions sopts;
      sopts.closure.cap = closure_cap;
      sopts.spectral.dense_limit = dense_limit;
      const auto rows = expander_scan(gens, b, qmax, sopts);
      if (format == "json") {
        json out = json::array();
        for (const auto& r : rows) {
          json row = {{"q", r.q}, {"n", r.n}};
          if (r.excluded_reason.empty()) {
            row["gap"] = r.gap;
            row["sweep"] = r.sweep;
          } else {
            row["excluded_reason"] = r.excluded_reason;
          }
          out.push_back(row);
        }
        result.payload = dump(out);
      } else {
        result.payload = scan_to_csv(rows);
      }
    } else if (*reduce) {
      const auto red = reduce_to_fundamental(HalfPlanePoint(re, im));
      if (format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "re,im,m\n" << red.point.re() << "," << red.point.im() << ",\"" << red.move.matrix().to_string() << "\"\n";
        result.payload = os.str();
      } else {
        result.payload = dump({{"re", red.point.re()}, {"im", red.point.im()}, {"m", red.move.matrix().to_string()}});
      }
    } else if (*height_scan) {
      std::vector<SimilitudeElement> family;
      for (auto& m : read_matrix_file(family_path)) family.emplace_back(std::move(m));
      const auto table = height_complexity_experiment(HalfPlanePoint(re, im), family);
      if (format == "json") {
        json rows = json::array();
        for (const auto& r : table.rows) {
          rows.push_back({{"n", r.n}, {"N", int_json(r.complexity)}, {"H", int_json(r.height)}, {"ratio", r.ratio}});
        }
        result.payload = dump({{"rows", rows}, {"max_ratio", table.max_ratio}});
      } else {
        result.payload = height_table_to_csv(table);
      }
    }
  } catch (const Error& e) {
    result.status = Status::Error;
    result.exit_code = 1;
    result.code = std::string(code_string(e.code()));
    result.diagnostics.push_back(e.what());
  } catch (const std::exception& e) {
    result.status = Status::Error;
    result.exit_code = 1;
    result.code = "INTERNAL";
    result.diagnostics.push_back(e.what());
  }
  return result;
}

}  // namespace zp::cli
