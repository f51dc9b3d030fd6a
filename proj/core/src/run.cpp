#include "bundlex/run.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bundlex/bundle.hpp"
#include "bundlex/errors.hpp"
#include "bundlex/extend.hpp"
#include "bundlex/serialize.hpp"
#include "bundlex/verify.hpp"

namespace bundlex {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

std::uint64_t parse_seed(const char* text) {
  std::uint64_t value = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(std::string("invalid BUNDLEX_SEED \"") + text +
                "\": expected a decimal integer");
  return value;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest digits that round-trip, so the CSV is canonical like the JSON.
std::string num(double v) {
  char buf[64];
  v += 0.0;  // folds negative zero
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void circle_row(std::ostream& out, const char* kind, const std::string& label,
                double center_re, double radius) {
  out << kind << ',' << label << ',' << num(center_re) << ",0," << num(radius)
      << '\n';
}

/* Circles of the base plane: the domain boundary, every collar annulus
 * boundary, every hole, and the sub-holes a refinement would cut. The
 * sub-hole count is the gluing word length, read without recognizing
 * flows, so the geometry stays plottable even when a factorization has
 * no matching flow. */
std::string layout_csv(const ext::BundleSpec& spec) {
  std::ostringstream out;
  out << "kind,label,center_re,center_im,radius\n";

  const double R = spec.domain.outer_radius;
  circle_row(out, "outer", "domain", 0.0, R);
  for (std::size_t h = 0; h < spec.domain.holes.size(); ++h)
    circle_row(out, "collar", "hole" + std::to_string(h),
               spec.domain.holes[h].center, 2.0 * spec.domain.holes[h].radius);
  circle_row(out, "collar", "outer", 0.0, R / 2.0);
  for (std::size_t h = 0; h < spec.domain.holes.size(); ++h)
    circle_row(out, "hole", "hole" + std::to_string(h),
               spec.domain.holes[h].center, spec.domain.holes[h].radius);

  for (std::size_t h = 0; h < spec.domain.holes.size(); ++h) {
    const auto g = ext::hole_gluing(spec, static_cast<int>(h));
    const int k = static_cast<int>(g.e_word.size());
    if (k < 2) continue;
    const auto lay = ext::SubHoleLayout::make(k);
    for (int p = 1; p <= k; ++p)
      circle_row(out, "subhole",
                 "hole" + std::to_string(h) + ".sub" + std::to_string(p),
                 spec.domain.holes[h].center +
                     spec.domain.holes[h].radius * lay.center_for(p),
                 spec.domain.holes[h].radius * lay.rho);
  }

  {
    const auto g = ext::outer_gluing(spec);
    const int k = static_cast<int>(g.e_word.size());
    if (k >= 2) {
      const auto lay = ext::SubHoleLayout::make(k);
      for (int p = 1; p <= k; ++p) {
        /* zeta = R / w sends the circle |w - m| = rho (real m) to the
         * circle with center R m / (m^2 - rho^2) and radius
         * R rho / |m^2 - rho^2|. The layout has m k at integer offsets
         * and rho k = 1/2, so the denominator never vanishes. */
        const double m = lay.center_for(p);
        const double denom = m * m - lay.rho * lay.rho;
        circle_row(out, "subhole", "outer.sub" + std::to_string(p),
                   R * m / denom, R * lay.rho / std::abs(denom));
      }
    }
  }
  return out.str();
}

int cmd_example(const std::string& name, int k, const std::string& out_path) {
  const auto spec = ext::builtin_example(name, k);
  write_file(out_path, io::serialize_spec(spec));
  return 0;
}

int cmd_extend(const std::string& spec_path, const std::string& out_path) {
  const auto spec = io::parse_spec(read_file(spec_path));
  const auto ext = ext::extend_bundle(spec, ext::BuildMode::strict);
  write_file(out_path, io::serialize_extension(ext));
  return 0;
}

/* Builds permissively: a spec whose factorization does not compose to
 * its monodromy should reach the numeric checks and fail there with
 * exit 1, not die in construction. Structurally invalid specs still
 * throw, which the caller maps to exit 2. */
int cmd_verify(const std::string& spec_path, int samples, double tol,
               std::uint64_t seed, const std::string& report_path) {
  const auto spec = io::parse_spec(read_file(spec_path));
  const auto start = std::chrono::steady_clock::now();
  const auto ext = ext::extend_bundle(spec, ext::BuildMode::permissive);
  const auto rep = ext::verify_cocycle(ext, samples, tol, seed);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  io::ReportMeta meta;
  meta.generated_at = utc_timestamp();
  meta.wall_clock_seconds = elapsed.count();
  write_file(report_path, io::serialize_report(rep, meta));

  double worst = 0.0;
  for (const auto& r : rep.records) {
    worst = std::max(worst, r.max_residual);
    if (!r.pass)
      std::cerr << "FAIL " << r.name << " (" << r.where << "): max residual "
                << r.max_residual << " exceeds " << r.tolerance << "\n";
  }
  std::cout << (rep.overall_pass ? "pass" : "FAIL") << ": "
            << rep.records.size() << " checks, max residual " << worst << "\n";
  return rep.overall_pass ? 0 : 1;
}

int cmd_layout(const std::string& spec_path, const std::string& out_path) {
  const auto spec = io::parse_spec(read_file(spec_path));
  ext::validate_spec(spec);
  write_file(out_path, layout_csv(spec));
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Extends a holomorphic fiber bundle over a disc with holes "
               "to the sphere and checks every gluing identity numerically.",
               "bundlex"};
  app.require_subcommand(1);

  std::string ex_name, ex_out;
  int ex_k = 2;
  auto* ex = app.add_subcommand("example", "Write a built-in spec file");
  ex->add_option("name", ex_name, "skoda or demailly")->required();
  ex->add_option("--k", ex_k, "factor count of the demailly monodromy")
      ->capture_default_str();
  ex->add_option("--out", ex_out, "spec file to write")->required();

  std::string xt_spec, xt_out;
  auto* xt =
      app.add_subcommand("extend", "Build the extension and write it as JSON");
  xt->add_option("--spec", xt_spec, "spec file to read")->required();
  xt->add_option("--out", xt_out, "extension file to write")->required();

  std::string vf_spec, vf_report;
  int vf_samples = 1000;
  double vf_tol = 1e-9;
  std::uint64_t vf_seed = 42;
  auto* vf = app.add_subcommand(
      "verify", "Build the extension and run every stored check");
  vf->add_option("--spec", vf_spec, "spec file to read")->required();
  vf->add_option("--samples", vf_samples, "samples per check")
      ->capture_default_str();
  vf->add_option("--tol", vf_tol, "residual tolerance")->capture_default_str();
  auto* seed_opt =
      vf->add_option("--seed", vf_seed, "sampling seed (overrides "
                                        "BUNDLEX_SEED; default 42)");
  vf->add_option("--report", vf_report, "report file to write")->required();

  std::string ly_spec, ly_out;
  auto* ly = app.add_subcommand(
      "layout", "Write the base-plane circles of a spec as CSV");
  ly->add_option("--spec", ly_spec, "spec file to read")->required();
  ly->add_option("--out", ly_out, "CSV file to write")->required();

  try {
    // The vector overload of CLI11's parse consumes from the back.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    if (ex->parsed()) return cmd_example(ex_name, ex_k, ex_out);
    if (xt->parsed()) return cmd_extend(xt_spec, xt_out);
    if (vf->parsed()) {
      std::uint64_t seed = vf_seed;
      if (seed_opt->count() == 0) {
        const char* env = std::getenv("BUNDLEX_SEED");
        seed = env ? parse_seed(env) : 42;
      }
      return cmd_verify(vf_spec, vf_samples, vf_tol, seed, vf_report);
    }
    if (ly->parsed()) return cmd_layout(ly_spec, ly_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bundlex
