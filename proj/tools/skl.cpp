// skl: command line surface over the Siegel half-space library.
//
// Every command prints one structured document on stdout. JSON output has
// the stable top-level keys command / config / result / diagnostics; CSV
// output is one header line plus one row per grid point. All output is
// deterministic for a fixed configuration (fixed seeds, ordered sums).
//
// Exit codes: 0 success, 1 domain or convergence failure, 2 input or
// format problem.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skl/enumeration.hpp"
#include "skl/kernel.hpp"
#include "skl/pointio.hpp"
#include "skl/verify.hpp"
#include "skl/volumes.hpp"

namespace {

using json = nlohmann::ordered_json;
using skl::matkit::RealMatrix;
using skl::siegel::SiegelPoint;

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json int_matrix_json(const skl::arithmetic::IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json point_json(const SiegelPoint& z) {
  return json{{"x", matrix_json(z.x())}, {"y", matrix_json(z.y())}};
}

std::string csv_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void print_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i)
    std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
}

// Shared command configuration; the subcommands bind the flags they use.
struct Options {
  int g = 2;
  int k = 1;
  int L = 2;
  std::string cache_path;
  int nodes = 64;
  unsigned long long seed = 42;
  int threads = 0;
  std::string format = "json";
  std::string suite = "all";
  std::vector<double> r;
  std::vector<double> d;
  std::string z_file;
  std::string w_file;
  std::string mode = "cocompact";
  std::size_t samples = 200000;
};

json config_json(const Options& o, std::initializer_list<const char*> keys) {
  json c;
  for (const char* key : keys) {
    const std::string k = key;
    if (k == "g") c["g"] = o.g;
    if (k == "k") c["k"] = o.k;
    if (k == "L") c["L"] = o.L;
    if (k == "cache") c["cache"] = o.cache_path;
    if (k == "nodes") c["nodes"] = o.nodes;
    if (k == "seed") c["seed"] = o.seed;
    if (k == "threads") c["threads"] = o.threads;
    if (k == "format") c["format"] = o.format;
    if (k == "suite") c["suite"] = o.suite;
    if (k == "r") c["r"] = o.r;
    if (k == "d") c["d"] = o.d;
    if (k == "z_file") c["z_file"] = o.z_file;
    if (k == "w_file") c["w_file"] = o.w_file;
    if (k == "mode") c["mode"] = o.mode;
    if (k == "samples") c["samples"] = o.samples;
  }
  return c;
}

skl::enumeration::GroupCache acquire_cache(const Options& o) {
  if (!o.cache_path.empty()) {
    std::ifstream probe(o.cache_path);
    if (probe.good()) return skl::enumeration::load_cache(o.cache_path);
  }
  return skl::enumeration::standard_cache(o.g, o.L);
}

skl::enumeration::CountMode parse_mode(const std::string& mode) {
  if (mode == "cocompact") return skl::enumeration::CountMode::cocompact;
  if (mode == "arithmetic") return skl::enumeration::CountMode::arithmetic;
  throw skl::FileFormatError("mode must be cocompact or arithmetic", 0);
}

// ----------------------------------------------------------------- commands

int cmd_distance(const Options& o) {
  const SiegelPoint z = skl::pointio::load_point(o.z_file);
  const SiegelPoint w = skl::pointio::load_point(o.w_file);
  if (z.g() != w.g()) throw skl::DimensionError("point files have different genus");
  const auto spec = skl::siegel::spectrum(z, w);
  const double dist = skl::siegel::distance(spec);
  const double resid = skl::siegel::identity_residual(z, w);

  if (o.format == "csv") {
    std::vector<std::string> header = {"distance", "identity_residual"};
    std::vector<std::string> row = {csv_num(dist), csv_num(resid)};
    for (std::size_t j = 0; j < spec.rho.size(); ++j) {
      header.push_back("rho_" + std::to_string(j + 1));
      row.push_back(csv_num(spec.rho[j]));
    }
    for (std::size_t j = 0; j < spec.radii.size(); ++j) {
      header.push_back("r_" + std::to_string(j + 1));
      row.push_back(csv_num(spec.radii[j]));
    }
    print_csv(header, {row});
    return 0;
  }
  json doc;
  doc["command"] = "distance";
  doc["config"] = config_json(o, {"z_file", "w_file", "format"});
  doc["result"] = {{"distance", dist},
                   {"rho", spec.rho},
                   {"radii", spec.radii},
                   {"identity_residual", resid}};
  doc["diagnostics"] = {{"g", z.g()}};
  print_json(doc);
  return 0;
}

int cmd_enumerate(const Options& o) {
  const auto cache = skl::enumeration::standard_cache(o.g, o.L);
  bool saved = false;
  if (!o.cache_path.empty()) {
    skl::enumeration::save_cache(cache, o.cache_path);
    saved = true;
  }
  if (o.format == "csv") {
    print_csv({"g", "word_length", "size", "truncated"},
              {{std::to_string(cache.g), std::to_string(cache.word_length),
                std::to_string(cache.elements.size()), cache.truncated ? "1" : "0"}});
    return 0;
  }
  json doc;
  doc["command"] = "enumerate";
  doc["config"] = config_json(o, {"g", "L", "cache", "format"});
  doc["result"] = {{"size", cache.elements.size()},
                   {"word_length", cache.word_length},
                   {"truncated", cache.truncated},
                   {"generators", cache.generator_desc}};
  doc["diagnostics"] = {{"saved", saved}};
  print_json(doc);
  return 0;
}

int cmd_count(const Options& o) {
  const auto cache = acquire_cache(o);
  const SiegelPoint z = o.z_file.empty() ? SiegelPoint::unit_imaginary(cache.g)
                                         : skl::pointio::load_point(o.z_file);
  const SiegelPoint w = o.w_file.empty() ? z : skl::pointio::load_point(o.w_file);
  if (z.g() != cache.g || w.g() != cache.g)
    throw skl::DimensionError("point genus does not match the cache");
  const auto mode = parse_mode(o.mode);
  if (o.r.empty()) throw skl::FileFormatError("count needs at least one --r radius", 0);

  std::vector<json> entries;
  std::vector<std::vector<std::string>> rows;
  for (double radius : o.r) {
    skl::enumeration::CountQuery q{z, w, radius, mode};
    const std::size_t n = skl::enumeration::count_gamma(cache, q, o.threads);
    const std::size_t nc = skl::enumeration::count_gamma_classes(cache, q, o.threads);
    entries.push_back(json{{"radius", radius}, {"count", n}, {"class_count", nc}});
    rows.push_back({csv_num(radius), std::to_string(n), std::to_string(nc)});
  }
  if (o.format == "csv") {
    print_csv({"radius", "count", "class_count"}, rows);
    return 0;
  }
  json doc;
  doc["command"] = "count";
  doc["config"] = config_json(o, {"g", "L", "cache", "mode", "r", "threads", "format"});
  doc["result"] = entries.size() == 1 ? entries.front() : json{{"sweep", entries}};
  doc["diagnostics"] = {{"cache_size", cache.elements.size()},
                        {"truncated", cache.truncated}};
  print_json(doc);
  return 0;
}

int cmd_reduce(const Options& o) {
  const auto cache = acquire_cache(o);
  const SiegelPoint z = skl::pointio::load_point(o.z_file);
  if (z.g() != cache.g) throw skl::DimensionError("point genus does not match the cache");
  const auto red = skl::arithmetic::siegel_reduce(z, cache.elements);
  const auto check = skl::arithmetic::is_siegel_reduced(red.z, cache.elements);

  if (o.format == "csv") {
    print_csv({"complete", "iterations", "height_maximal", "y_minkowski", "x_in_box"},
              {{red.complete ? "1" : "0", std::to_string(red.iterations),
                check.height_maximal ? "1" : "0", check.y_minkowski ? "1" : "0",
                check.x_in_box ? "1" : "0"}});
    return 0;
  }
  json doc;
  doc["command"] = "reduce";
  doc["config"] = config_json(o, {"g", "L", "cache", "z_file", "format"});
  doc["result"] = {{"complete", red.complete},
                   {"iterations", red.iterations},
                   {"gamma", int_matrix_json(red.gamma.full())},
                   {"point", point_json(red.z)},
                   {"check",
                    {{"reduced", check.reduced},
                     {"height_maximal", check.height_maximal},
                     {"y_minkowski", check.y_minkowski},
                     {"x_in_box", check.x_in_box}}}};
  doc["diagnostics"] = {{"cache_size", cache.elements.size()}};
  print_json(doc);
  return 0;
}

int cmd_volume(const Options& o) {
  skl::volumes::QuadratureSpec spec;
  spec.nodes = o.nodes;
  std::vector<double> grid = o.r.empty() ? std::vector<double>{1.0} : o.r;

  std::vector<json> entries;
  std::vector<std::vector<std::string>> rows;
  for (double r : grid) {
    const double quad = skl::volumes::polydisk_volume(o.g, r, spec);
    const double shape = skl::volumes::polydisk_volume_bound(o.g, r);
    json e;
    e["r"] = r;
    e["quadrature"] = quad;
    std::vector<std::string> row = {csv_num(r), csv_num(quad)};
    if (o.g == 2) {
      const auto closed = skl::volumes::polydisk_volume_g2_exact(r);
      e["closed_form"] = {{"i1", closed.i1}, {"i2", closed.i2}, {"i3", closed.i3},
                          {"total", closed.total}};
      e["bound_g2"] = skl::volumes::polydisk_volume_bound_g2(r);
      row.push_back(csv_num(closed.total));
      row.push_back(csv_num(skl::volumes::polydisk_volume_bound_g2(r)));
    }
    e["bound_shape"] = shape;
    e["shape_ratio"] = quad / shape;
    row.push_back(csv_num(shape));
    row.push_back(csv_num(quad / shape));
    entries.push_back(e);
    rows.push_back(row);
  }
  if (o.format == "csv") {
    std::vector<std::string> header = {"r", "quadrature"};
    if (o.g == 2) {
      header.push_back("closed_form");
      header.push_back("bound_g2");
    }
    header.push_back("bound_shape");
    header.push_back("shape_ratio");
    print_csv(header, rows);
    return 0;
  }
  json doc;
  doc["command"] = "volume";
  doc["config"] = config_json(o, {"g", "r", "nodes", "format"});
  doc["result"] = entries.size() == 1 ? entries.front() : json{{"sweep", entries}};
  doc["diagnostics"] = {{"rel_tol", spec.rel_tol}, {"max_doublings", spec.max_doublings}};
  print_json(doc);
  return 0;
}

int cmd_kernel(const Options& o) {
  skl::kernel::KernelParams p{o.g, o.k, 1.0};
  skl::kernel::validate(p);

  // Envelope mode: --d given, no point files.
  if (!o.d.empty() && o.z_file.empty()) {
    std::vector<json> entries;
    std::vector<std::vector<std::string>> rows;
    for (double d : o.d) {
      const double env = skl::kernel::decay_envelope(p, d);
      entries.push_back(json{{"d", d}, {"decay_envelope", env}});
      rows.push_back({csv_num(d), csv_num(env)});
    }
    if (o.format == "csv") {
      print_csv({"d", "decay_envelope"}, rows);
      return 0;
    }
    json doc;
    doc["command"] = "kernel";
    doc["config"] = config_json(o, {"g", "k", "d", "format"});
    doc["result"] = entries.size() == 1 ? entries.front() : json{{"sweep", entries}};
    doc["diagnostics"] = {{"weight", p.weight()}};
    print_json(doc);
    return 0;
  }

  if (o.z_file.empty() || o.w_file.empty())
    throw skl::FileFormatError("kernel needs either --d or both --z-file and --w-file", 0);
  const SiegelPoint z = skl::pointio::load_point(o.z_file);
  const SiegelPoint w = skl::pointio::load_point(o.w_file);
  if (z.g() != o.g || w.g() != o.g)
    throw skl::DimensionError("point genus does not match --g");
  const auto cache = acquire_cache(o);
  const double tn = skl::kernel::truncated_norm(p, z, w, cache.elements,
                                                skl::kernel::SumMode::kahan, o.threads);
  const double mj = skl::kernel::majorant_sum(p, z, w, cache.elements,
                                              skl::kernel::SumMode::kahan, o.threads);
  const double dist = skl::siegel::distance(z, w);
  const double env = skl::kernel::decay_envelope(p, dist);

  json result = {{"weight", p.weight()},
                 {"distance", dist},
                 {"truncated_norm", tn},
                 {"majorant", mj},
                 {"decay_envelope", env}};
  const double dy = skl::matkit::det_real(z.y());
  const double dv = skl::matkit::det_real(w.y());
  if (dv > dy) {
    const auto ce = skl::kernel::cusp_envelope(p, z, w);
    result["cusp_envelope"] = {{"first", ce.first}, {"far", ce.far}, {"total", ce.total}};
  }
  if (o.format == "csv") {
    print_csv({"distance", "truncated_norm", "majorant", "decay_envelope"},
              {{csv_num(dist), csv_num(tn), csv_num(mj), csv_num(env)}});
    return 0;
  }
  json doc;
  doc["command"] = "kernel";
  doc["config"] = config_json(o, {"g", "k", "L", "cache", "z_file", "w_file", "threads",
                                  "format"});
  doc["result"] = result;
  doc["diagnostics"] = {{"cache_size", cache.elements.size()},
                        {"truncated", cache.truncated}};
  print_json(doc);
  return 0;
}

int cmd_verify(const Options& o) {
  const auto results = skl::verify::run_suite(o.suite, o.seed, o.threads);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;

  if (o.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results)
      rows.push_back({r.suite, r.name, r.pass ? "1" : "0", csv_num(r.residual),
                      csv_num(r.threshold)});
    print_csv({"suite", "name", "pass", "residual", "threshold"}, rows);
    return failed == 0 ? 0 : 1;
  }
  json props = json::array();
  for (const auto& r : results)
    props.push_back(json{{"suite", r.suite},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"residual", r.residual},
                         {"threshold", r.threshold},
                         {"detail", r.detail}});
  json doc;
  doc["command"] = "verify";
  doc["config"] = config_json(o, {"suite", "seed", "threads", "format"});
  doc["result"] = {{"passed", results.size() - failed}, {"failed", failed},
                   {"properties", props}};
  doc["diagnostics"] = {{"suites", skl::verify::suite_names()}};
  print_json(doc);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the Siegel upper half space"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", o.threads,
                    "Worker threads (0: SKL_THREADS environment variable, then 1)");
    cmd->add_option("--format", o.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* c_dist = app.add_subcommand("distance", "Invariant distance between two points");
  c_dist->add_option("--z-file", o.z_file, "First point file")->required();
  c_dist->add_option("--w-file", o.w_file, "Second point file")->required();
  add_common(c_dist);

  CLI::App* c_enum = app.add_subcommand("enumerate", "Breadth-first group element cache");
  c_enum->add_option("--g", o.g, "Genus")->check(CLI::Range(1, 4));
  c_enum->add_option("--L", o.L, "Word length")->check(CLI::Range(0, 16));
  c_enum->add_option("--cache", o.cache_path, "Write the cache to this path");
  add_common(c_enum);

  CLI::App* c_count = app.add_subcommand("count", "Orbit counting inside a radius");
  c_count->add_option("--g", o.g, "Genus")->check(CLI::Range(1, 4));
  c_count->add_option("--L", o.L, "Word length when building the cache")->check(CLI::Range(0, 16));
  c_count->add_option("--cache", o.cache_path, "Load the cache from this path if it exists");
  c_count->add_option("--r", o.r, "Counting radius, repeatable for a sweep")->required();
  c_count->add_option("--z-file", o.z_file, "Center point file (default i Id)");
  c_count->add_option("--w-file", o.w_file, "Orbit base point file (default Z)");
  c_count->add_option("--mode", o.mode, "cocompact or arithmetic")
      ->check(CLI::IsMember({"cocompact", "arithmetic"}));
  add_common(c_count);

  CLI::App* c_red = app.add_subcommand("reduce", "Siegel reduction of a point");
  c_red->add_option("--g", o.g, "Genus")->check(CLI::Range(1, 4));
  c_red->add_option("--L", o.L, "Word length when building the cache")->check(CLI::Range(0, 16));
  c_red->add_option("--cache", o.cache_path, "Load the cache from this path if it exists");
  c_red->add_option("--z-file", o.z_file, "Point file")->required();
  add_common(c_red);

  CLI::App* c_vol = app.add_subcommand("volume", "Polydisk volume with bound cross-checks");
  c_vol->add_option("--g", o.g, "Genus")->check(CLI::Range(1, 4));
  c_vol->add_option("--r", o.r, "Radius, repeatable for a sweep");
  c_vol->add_option("--nodes", o.nodes, "Quadrature nodes per axis")->check(CLI::Range(8, 512));
  add_common(c_vol);

  CLI::App* c_ker = app.add_subcommand("kernel", "Series sums and envelopes");
  c_ker->add_option("--g", o.g, "Genus")->check(CLI::Range(2, 4));
  c_ker->add_option("--k", o.k, "Tensor power")->check(CLI::Range(1, 1000));
  c_ker->add_option("--L", o.L, "Word length when building the cache")->check(CLI::Range(0, 16));
  c_ker->add_option("--cache", o.cache_path, "Load the cache from this path if it exists");
  c_ker->add_option("--d", o.d, "Distance for the decay envelope, repeatable");
  c_ker->add_option("--z-file", o.z_file, "First point file");
  c_ker->add_option("--w-file", o.w_file, "Second point file");
  add_common(c_ker);

  CLI::App* c_ver = app.add_subcommand("verify", "Property suites with measured residuals");
  c_ver->add_option("--suite", o.suite, "Suite name or 'all'");
  c_ver->add_option("--seed", o.seed, "Sampling seed");
  add_common(c_ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_dist)) return cmd_distance(o);
    if (app.got_subcommand(c_enum)) return cmd_enumerate(o);
    if (app.got_subcommand(c_count)) return cmd_count(o);
    if (app.got_subcommand(c_red)) return cmd_reduce(o);
    if (app.got_subcommand(c_vol)) return cmd_volume(o);
    if (app.got_subcommand(c_ker)) return cmd_kernel(o);
    if (app.got_subcommand(c_ver)) return cmd_verify(o);
  } catch (const skl::FileFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const skl::DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const skl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
