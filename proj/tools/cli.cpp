#include "cli.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qcrypt/analysis.hpp"
#include "qcrypt/baker.hpp"
#include "qcrypt/chaos.hpp"
#include "qcrypt/cipher.hpp"
#include "qcrypt/container.hpp"
#include "qcrypt/error.hpp"
#include "qcrypt/image_io.hpp"
#include "qcrypt/keyfile.hpp"
#include "qcrypt/sfc.hpp"

namespace qcrypt::cli {

namespace fs = std::filesystem;

namespace {

std::string g15(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("QC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

// Brings a decoded image into the layout's channel count and sample depth.
Raster to_layout(const Raster& img, const AxisLayout& layout, const fs::path& path) {
  if (img.width != layout.side() || img.height != layout.side())
    throw DataError(path.string() + ": expected " + std::to_string(layout.side()) + "x" + std::to_string(layout.side()) +
                    " pixels, got " + std::to_string(img.width) + "x" + std::to_string(img.height));
  if (layout.palette) return quantize_to_palette(img, layout.channels, layout.sample_depth());
  return convert_depth(to_channels(img, layout.channels), layout.sample_depth());
}

Raster for_output(const Raster& img, const AxisLayout& layout) {
  return layout.palette ? render_palette(img) : img;
}

std::vector<fs::path> input_paths(const std::string& manifest, const std::vector<std::string>& images) {
  std::vector<fs::path> paths;
  if (!manifest.empty()) paths = io::read_manifest(manifest);
  for (const auto& p : images) paths.emplace_back(p);
  if (paths.empty()) throw DataError("no input images (empty manifest?)");
  return paths;
}

void write_images(const fs::path& dir, const std::string& prefix, const std::vector<Raster>& images,
                  const AxisLayout& layout) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < images.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s%04zu.png", prefix.c_str(), i);
    io::write_image(dir / name, for_output(images[i], layout));
  }
}

struct Format {
  std::string name = "text";
  bool csv() const { return name == "csv"; }
};

void print_report(std::ostream& out, const analysis::AnalysisReport& r, const Format& fmt) {
  const std::pair<const char*, double> rows[] = {
      {"entropy_bits_per_digit", r.entropy},   {"correlation_horizontal", r.correlation[0]},
      {"correlation_vertical", r.correlation[1]}, {"correlation_diagonal", r.correlation[2]},
      {"npcr", r.npcr},                         {"uaci", r.uaci}};
  if (fmt.csv()) out << "metric,value\n";
  if (fmt.csv()) out << "radix," << r.radix << '\n';
  else out << "radix: " << r.radix << '\n';
  for (const auto& [k, v] : rows) {
    const std::string s = std::isnan(v) ? "n/a" : g15(v);
    if (fmt.csv()) out << k << ',' << s << '\n';
    else out << k << ": " << s << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-image encryption on simulated qudit registers"};
  app.require_subcommand(1);
  Format fmt;
  app.add_option("--format", fmt.name, "Output format for reports")->check(CLI::IsMember({"text", "csv"}));

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Generate a key file for a preset");
  std::string kg_preset, kg_out;
  bool kg_full = false;
  int kg_n = 0;
  std::uint64_t kg_images = 0, kg_max_iter = 1'000'000;
  std::optional<std::uint64_t> kg_seed;
  keygen->add_option("--preset", kg_preset, "Scheme preset")->required();
  keygen->add_flag("--full", kg_full, "Full-scale plan instead of the desk-scale twin");
  keygen->add_option("--n", kg_n, "Size parameter override");
  keygen->add_option("--images", kg_images, "Number of images the key must hold");
  keygen->add_option("--seed", kg_seed, "Deterministic RNG seed");
  keygen->add_option("--max-iterations", kg_max_iter, "Upper bound for baker iteration counts")
      ->check(CLI::PositiveNumber);
  keygen->add_option("--out", kg_out, "Key file to write")->required();

  // encrypt
  auto* enc = app.add_subcommand("encrypt", "Encrypt images into a container");
  std::string enc_key, enc_key_out, enc_manifest, enc_out, enc_images_dir;
  std::vector<std::string> enc_inputs;
  bool enc_serial = false;
  enc->add_option("--key", enc_key, "Key file")->required();
  enc->add_option("--key-out", enc_key_out, "Where to write the key with plaintext seeds (default: --key)");
  enc->add_option("--manifest", enc_manifest, "Manifest listing the images");
  enc->add_option("--image", enc_inputs, "Input image (repeatable)");
  enc->add_option("--out", enc_out, "Container to write")->required();
  enc->add_option("--images-out", enc_images_dir, "Also write the ciphertext images here");
  enc->add_flag("--serial", enc_serial, "Use the serial reference kernels");

  // decrypt
  auto* dec = app.add_subcommand("decrypt", "Decrypt a container into images");
  std::string dec_key, dec_in, dec_dir, dec_prefix = "image_";
  bool dec_serial = false;
  dec->add_option("--key", dec_key, "Key file written by encrypt")->required();
  dec->add_option("--in", dec_in, "Container")->required();
  dec->add_option("--out-dir", dec_dir, "Directory for the recovered images")->required();
  dec->add_option("--prefix", dec_prefix, "File name prefix");
  dec->add_flag("--serial", dec_serial, "Use the serial reference kernels");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Entropy, adjacent correlation, NPCR/UACI");
  std::string ana_container, ana_against, ana_key, ana_manifest, ana_against_manifest;
  std::vector<std::string> ana_images;
  std::uint64_t ana_seed = 1;
  std::size_t ana_samples = 10'000;
  ana->add_option("--container", ana_container, "Ciphertext container");
  ana->add_option("--against", ana_against, "Second container for NPCR/UACI");
  ana->add_option("--key", ana_key, "Key for the container, enables correlations");
  ana->add_option("--manifest", ana_manifest, "Images to analyze");
  ana->add_option("--image", ana_images, "Image to analyze (repeatable)");
  ana->add_option("--against-manifest", ana_against_manifest, "Second image list for NPCR/UACI");
  ana->add_option("--seed", ana_seed, "Sampling seed for correlations");
  ana->add_option("--samples", ana_samples, "Adjacent pairs per direction")->check(CLI::PositiveNumber);

  // table
  auto* table = app.add_subcommand("table", "Admissible partition counts P_n (t=2), Q_n (t=4), T_n (t=8)");
  int tb_max = 5;
  table->add_option("max_n", tb_max, "Largest n")->check(CLI::Range(1, 12));

  // curve
  auto* curve = app.add_subcommand("curve", "Sample a space-filling curve to CSV");
  std::string cv_kind = "plateau", cv_out;
  int cv_dim = 2, cv_terms = 8;
  std::size_t cv_samples = 1000;
  curve->add_option("--kind", cv_kind, "Curve family")->check(CLI::IsMember({"schoenberg", "plateau"}));
  curve->add_option("--dim", cv_dim, "Dimension")->check(CLI::Range(1, 8));
  curve->add_option("--terms", cv_terms, "Series terms")->check(CLI::Range(1, 60));
  curve->add_option("--samples", cv_samples, "Intervals of [0,1]")->check(CLI::PositiveNumber);
  curve->add_option("--out", cv_out, "CSV file (default: stdout)");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Export a chaotified orbit to CSV");
  std::string ob_system = "yan7d", ob_out;
  std::vector<double> ob_lambda, ob_seed;
  std::vector<int> ob_coords{0, 1, 2};
  double ob_f = 7.2;
  std::size_t ob_points = 10'000;
  orbit->add_option("--system", ob_system, "Chaotic system")->check(CLI::IsMember({"yan7d", "wang4d"}));
  orbit->add_option("--lambda", ob_lambda, "Sine gains, comma separated")->delimiter(',')->required();
  orbit->add_option("--seed", ob_seed, "Initial state, comma separated (default 0.1, 0.2, ...)")->delimiter(',');
  orbit->add_option("--f", ob_f, "yan7d coefficient f");
  orbit->add_option("--points", ob_points, "Points after burn-in")->check(CLI::PositiveNumber);
  orbit->add_option("--coords", ob_coords, "Three 0-based coordinates")->delimiter(',')->expected(3);
  orbit->add_option("--out", ob_out, "CSV file (default: stdout)");

  std::vector<std::string> argv_store{"qcrypt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  apply_thread_cap();
  try {
    if (*keygen) {
      const PresetOptions opts{kg_full, kg_images, kg_n};
      const SchemePlan plan = preset(kg_preset, opts);
      std::mt19937_64 rng(kg_seed ? *kg_seed : std::random_device{}() ^ (std::uint64_t{std::random_device{}()} << 32));
      const KeyFile key = generate_key(plan, opts, rng, KeygenOptions{kg_max_iter});
      save_key(kg_out, key);
      out << "wrote " << kg_out << " (" << plan.name << ", " << plan.layout.capacity() << " image slots, "
          << qudit_count(plan.layout) << " qudits)\n";
    } else if (*enc) {
      KeyFile key = load_key(enc_key);
      const SchemePlan plan = plan_for(key);
      std::vector<Raster> images;
      for (const auto& p : input_paths(enc_manifest, enc_inputs)) images.push_back(to_layout(io::read_image(p), plan.layout, p));
      const MultiImageState ct = encrypt(plan, key, images, enc_serial ? Backend::serial : Backend::omp);
      save_container(enc_out, ct);
      save_key(enc_key_out.empty() ? enc_key : enc_key_out, key);
      if (!enc_images_dir.empty()) write_images(enc_images_dir, "cipher_", unpack(ct, true), plan.layout);
      out << "encrypted " << images.size() << " images into " << enc_out << '\n';
    } else if (*dec) {
      const KeyFile key = load_key(dec_key);
      const SchemePlan plan = plan_for(key);
      MultiImageState ct = to_state(load_container(dec_in), plan.layout);
      const auto images = decrypt(plan, key, std::move(ct), dec_serial ? Backend::serial : Backend::omp);
      write_images(dec_dir, dec_prefix, images, plan.layout);
      out << "decrypted " << images.size() << " images into " << dec_dir << '\n';
    } else if (*ana) {
      analysis::AnalysisReport r;
      std::mt19937_64 rng(ana_seed);
      if (!ana_container.empty()) {
        const RawContainer raw = load_container(ana_container);
        r.radix = raw.header.radix;
        r.entropy = analysis::entropy(raw.cells, r.radix);
        if (!ana_key.empty()) {
          const SchemePlan plan = plan_for(load_key(ana_key));
          const auto imgs = unpack(to_state(raw, plan.layout), true);
          r.correlation = analysis::adjacent_correlation(imgs, rng, ana_samples);
        }
        if (!ana_against.empty()) {
          const RawContainer other = load_container(ana_against);
          if (other.cells.size() != raw.cells.size()) throw DataError("analyze: containers differ in size");
          r.npcr = analysis::npcr(raw.cells, other.cells);
          r.uaci = analysis::uaci(raw.cells, other.cells, r.radix);
        }
      } else {
        std::vector<Raster> imgs;
        for (const auto& p : input_paths(ana_manifest, ana_images)) imgs.push_back(io::read_image(p));
        const auto q = analysis::image_quarts(imgs);
        r.radix = 4;
        r.entropy = analysis::entropy(q, 4);
        r.correlation = analysis::adjacent_correlation(imgs, rng, ana_samples);
        if (!ana_against_manifest.empty()) {
          std::vector<Raster> other;
          for (const auto& p : io::read_manifest(ana_against_manifest)) other.push_back(io::read_image(p));
          const auto q2 = analysis::image_quarts(other);
          if (q2.size() != q.size()) throw DataError("analyze: image sets differ in size");
          r.npcr = analysis::npcr(q, q2);
          r.uaci = analysis::uaci(q, q2, 4);
        }
      }
      print_report(out, r, fmt);
    } else if (*table) {
      const char* sep = fmt.csv() ? "," : "  ";
      out << "n" << sep << "P_n" << sep << "Q_n" << sep << "T_n(t=8)\n";
      for (int n = 1; n <= tb_max; ++n)
        out << n << sep << count_admissible(2, n) << sep << count_admissible(4, n) << sep << count_admissible(8, n) << '\n';
      if (!fmt.csv() && tb_max >= 3)
        out << "note: T_3(t=8) = 257^8 + 1 = " << count_admissible(8, 3)
            << ", not 19031147999601100801 (= 257^8).\n";
    } else if (*curve) {
      sfc::CurveSpec spec{cv_dim, cv_kind == "plateau" ? sfc::CurveKind::plateau : sfc::CurveKind::schoenberg, cv_terms};
      spec.validate();
      std::ofstream file;
      if (!cv_out.empty()) {
        file.open(cv_out);
        if (!file) throw DataError("cannot write " + cv_out);
      }
      std::ostream& dst = cv_out.empty() ? out : file;
      for (std::size_t i = 0; i <= cv_samples; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(cv_samples);
        dst << g15(u);
        for (const double c : sfc::curve_eval(spec, u)) dst << ',' << g15(c);
        dst << '\n';
      }
    } else if (*orbit) {
      const auto params = ob_system == "yan7d" ? chaos::ChaoticParams::yan7d(ob_lambda, ob_f)
                                               : chaos::ChaoticParams::wang4d(ob_lambda);
      if (ob_seed.empty())
        for (int i = 0; i < params.dimension(); ++i) ob_seed.push_back(0.1 * (i + 1));
      const auto pts = chaos::orbit_export(params, ob_seed, ob_points, {ob_coords[0], ob_coords[1], ob_coords[2]});
      std::ofstream file;
      if (!ob_out.empty()) {
        file.open(ob_out);
        if (!file) throw DataError("cannot write " + ob_out);
      }
      std::ostream& dst = ob_out.empty() ? out : file;
      for (const auto& p : pts) dst << g15(p[0]) << ',' << g15(p[1]) << ',' << g15(p[2]) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace qcrypt::cli
