#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpq/error.hpp"
#include "lpq/format.hpp"
#include "lpq/io.hpp"
#include "lpq/parallel.hpp"

namespace lpq::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  // shape and function source
  int n = 1;
  std::vector<int> sizes{64};
  std::string input;
  std::string kind;
  std::uint64_t seed = 0;
  double value = 1.0;
  std::vector<std::int64_t> frequency{1};
  double width = 0.1;
  double sharpness = 40.0;
  double slope = 1.0;
  std::string corpus;
  std::string catalogue;

  // norm parameters
  std::string norm_kind;
  std::string check;
  std::vector<double> alphas{0.5};
  double lambda = 1.0;
  std::optional<double> sigma;
  double m = 2.0;
  std::optional<int> K;  // dyadiclp and lemma23 default to 0, fubini to 3
  int level_max = -1;
  bool shifted = true;
  int j_min = 0;
  std::string profile = "exponential";
  bool profiles_table = false;

  // kernel sampling
  std::size_t pairs = 1000;
  int extra_levels = 0;

  // output and execution
  std::string out;
  std::string format;
  unsigned threads = 1;
};

double alpha_of(const Options& o) { return o.alphas.front(); }

ProfileFamily profile_family(const Options& o) {
  return o.profile == "log_exponential" ? ProfileFamily::log_exponential : ProfileFamily::exponential;
}

CubeFamily cube_family(const Options& o) { return CubeFamily{o.level_max, o.shifted}; }

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void validate(const Options& o, const std::string& command) {
  if (o.n != 1 && o.n != 2) throw ConfigError("--n must be 1 or 2");
  for (int s : o.sizes) {
    if (!power_of_two(s) || s < 8) throw ConfigError("--size must be a power of two >= 8, got " + std::to_string(s));
  }
  for (double a : o.alphas) {
    if (!std::isfinite(a)) throw ConfigError("--alpha must be finite");
  }
  if (o.alphas.size() > 1 && command != "verify fubini") throw ConfigError("--alpha takes a single value here");
  if (!std::isfinite(o.m) || o.m < 2.0) throw ConfigError("--m must be >= 2");
  if (o.K && *o.K < 0) throw ConfigError("--K must be >= 0");
  if (o.j_min < 0) throw ConfigError("--j-min must be >= 0");
  if (o.pairs == 0) throw ConfigError("--pairs must be positive");
  if (o.extra_levels < 0) throw ConfigError("--extra-levels must be >= 0");
  if (o.sigma && !std::isfinite(*o.sigma)) throw ConfigError("--sigma must be finite");
  if (!o.input.empty() && !o.kind.empty()) throw ConfigError("--input and --kind are mutually exclusive");
  if (o.frequency.empty() || o.frequency.size() > 2) throw ConfigError("--frequency takes one or two integers");
  if (!o.kind.empty()) corpus_kind_from_string(o.kind);
}

CorpusSpec spec_from_flags(const Options& o, int size) {
  CorpusSpec s;
  s.kind = corpus_kind_from_string(o.kind);
  s.id = o.kind;
  s.dim = o.n;
  s.size = size;
  s.seed = o.seed;
  s.value = o.value;
  s.frequency = {o.frequency[0], o.frequency.size() > 1 ? o.frequency[1] : 0};
  s.width = o.width;
  s.sharpness = o.sharpness;
  s.slope = o.slope;
  return s;
}

int single_size(const Options& o) {
  if (o.sizes.size() != 1) throw ConfigError("--size takes a single value here");
  return o.sizes.front();
}

GridFunction load_function(const Options& o) {
  if (!o.input.empty()) {
    auto f = read_grid_file(o.input);
    if (f.dim() != o.n || f.size() != single_size(o)) {
      throw ConfigError(o.input + " holds an n = " + std::to_string(f.dim()) + ", N = " + std::to_string(f.size()) +
                        " grid, which disagrees with --n/--size");
    }
    return f;
  }
  if (o.kind.empty()) throw ConfigError("one of --input or --kind is required");
  return generate(spec_from_flags(o, single_size(o)));
}

std::vector<CorpusSpec> base_corpus(const Options& o, bool converged) {
  std::vector<CorpusSpec> corpus;
  if (!o.corpus.empty()) {
    corpus = read_corpus_file(o.corpus);
  } else {
    corpus = converged ? converged_corpus(o.n, o.sizes.front(), alpha_of(o))
                       : default_corpus(o.n, o.sizes.front(), alpha_of(o));
  }
  for (auto& spec : corpus) spec = spec.at(o.n, o.sizes.front());
  return corpus;
}

std::vector<CorpusSpec> resized(std::span<const CorpusSpec> corpus, int size) {
  std::vector<CorpusSpec> out;
  for (const auto& s : corpus) out.push_back(s.at(s.dim, size));
  return out;
}

std::string output_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  return fs::path(o.out).extension() == ".csv" ? "csv" : "json";
}

std::optional<fs::path> output_path(const Options& o, const std::string& stem, const std::string& extension) {
  if (!o.out.empty()) return fs::path(o.out);
  if (const char* dir = std::getenv("LPQ_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / (stem + "." + extension);
  }
  return std::nullopt;
}

struct Emitter {
  const Options& o;
  std::ostream& out;

  // Writes the report; the summary replaces it on stdout when it goes to a file.
  void operator()(const std::string& stem, const std::string& json, const std::string& csv,
                  const std::vector<std::string>& summary) const {
    const auto fmt = output_format(o);
    const auto& text = fmt == "csv" ? csv : json;
    if (const auto path = output_path(o, stem, fmt)) {
      write_text_file(*path, text);
      for (const auto& line : summary) out << line << "\n";
      out << "wrote " << path->string() << "\n";
    } else {
      out << text;
    }
  }
};

double l2_norm(const GridFunction& f) { return std::sqrt(l2_on_cube(f, Cube::unit(f.dim()))); }

std::string cube_text(const Cube& c) {
  std::string s = "[" + format_double(c.corner[0]);
  for (int d = 1; d < c.dim; ++d) s += "," + format_double(c.corner[d]);
  return s + "] edge " + format_double(c.edge);
}

// ---- subcommands ------------------------------------------------------------

void run_gen(const Options& o, std::ostream& out) {
  if (!o.catalogue.empty()) {
    const auto corpus = o.catalogue == "converged" ? converged_corpus(o.n, single_size(o), alpha_of(o))
                                                   : default_corpus(o.n, single_size(o), alpha_of(o));
    const auto text = corpus_to_json(corpus);
    if (const auto path = output_path(o, o.catalogue, "json")) {
      write_text_file(*path, text);
      out << "wrote " << corpus.size() << " corpus entries to " << path->string() << "\n";
    } else {
      out << text;
    }
    return;
  }
  if (!o.corpus.empty()) {
    const char* env = std::getenv("LPQ_OUTPUT_DIR");
    if (o.out.empty() && (env == nullptr || *env == '\0')) {
      throw ConfigError("gen --corpus needs --out <directory> or LPQ_OUTPUT_DIR");
    }
    const fs::path target = o.out.empty() ? fs::path(env) : fs::path(o.out);
    const auto corpus = base_corpus(o, false);
    for (const auto& spec : corpus) {
      write_grid_file(target / (spec.id + ".grid"), generate(spec));
    }
    out << "wrote " << corpus.size() << " grids to " << target.string() << "\n";
    return;
  }
  if (o.kind.empty()) throw ConfigError("gen needs --kind, --corpus or --catalogue");
  const auto f = generate(spec_from_flags(o, single_size(o)));
  if (const auto path = output_path(o, o.kind, "grid")) {
    write_grid_file(*path, f);
    out << "wrote " << path->string() << "\n";
  } else {
    write_grid(out, f);
  }
}

void run_norm(const Options& o, std::ostream& out) {
  const auto f = load_function(o);
  const double alpha = alpha_of(o);
  const auto cubes = cube_family(o).cubes(f.dim(), f.log2_size());
  const Emitter emit{o, out};

  if (o.norm_kind == "mb") {
    const auto bands = decompose(f, o.j_min, profile_family(o));
    const double sigma = o.sigma.value_or(f.dim() - 2.0 * alpha);
    const auto r = morrey_besov(bands, alpha, sigma, 2.0, 2.0, cubes);
    emit("mb", to_json(r), to_csv(r), {"mb value " + format_double(r.value)});
    return;
  }

  NormReport r;
  if (o.norm_kind == "qalpha") {
    r = q_alpha(f, alpha, cubes);
  } else if (o.norm_kind == "campanato") {
    r = campanato(f, o.lambda, cubes);
  } else {
    const auto bands = decompose(f, o.j_min, profile_family(o));
    r = o.norm_kind == "lpmorrey" ? lp_morrey(f, alpha, cubes, bands)
                                  : dyadic_lp_norm(f, alpha, cubes, o.K.value_or(0), bands);
  }
  emit(o.norm_kind, to_json(r), to_csv(r),
       {o.norm_kind + " value " + format_double(r.value), "argmax " + cube_text(r.argmax)});
}

void run_decompose(const Options& o, std::ostream& out) {
  const auto f = load_function(o);
  const auto family = profile_family(o);
  const Emitter emit{o, out};
  if (o.profiles_table) {
    const auto profiles = build_profiles(f.dim(), f.log2_size(), o.j_min, family);
    const auto csv = profiles_csv(profiles);
    emit("profiles", csv, csv, {std::to_string(profiles.size()) + " profiles"});
    return;
  }

  const auto bands = decompose(f, o.j_min, family);
  const double total = l2_norm(f);
  GridFunction sum = bands.lowpass;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "band,l2,fraction\n";
  auto add_row = [&](const std::string& name, const GridFunction& g) {
    const double e = l2_norm(g);
    const double fraction = total > 0.0 ? e * e / (total * total) : 0.0;
    rows.push_back({{"band", name}, {"l2", e}, {"fraction", fraction}});
    csv += name + "," + format_double(e) + "," + format_double(fraction) + "\n";
  };
  add_row("lowpass", bands.lowpass);
  for (int j = bands.j_min; j <= bands.j_max; ++j) {
    add_row(std::to_string(j), bands.band(j));
    sum = sum.combined(1.0, bands.band(j), 1.0);
  }
  const double error = l2_norm(sum.combined(1.0, f, -1.0));
  nlohmann::ordered_json j{{"n", f.dim()},  {"N", f.size()},       {"j_min", bands.j_min},
                           {"j_max", bands.j_max}, {"l2", total}, {"reconstruction_error", error},
                           {"bands", rows}};
  emit("decompose", j.dump(2) + "\n", csv,
       {"bands " + std::to_string(bands.j_min) + ".." + std::to_string(bands.j_max),
        "reconstruction_error " + format_double(error)});
}

void run_kernel(const Options& o, std::ostream& out) {
  const auto d = kernel_decay_check(alpha_of(o), o.m, o.n, o.pairs, o.seed, o.extra_levels);
  const Emitter emit{o, out};
  emit("kernel", to_json(d), to_csv(d),
       {"pairs " + std::to_string(d.rows.size()), "slope " + format_double(d.slope),
        std::string("k_full >= k_allowed on every pair: ") + (d.subset_ok ? "yes" : "no")});
}

void run_verify(const Options& o, std::ostream& out) {
  const double alpha = alpha_of(o);
  const Emitter emit{o, out};

  if (o.check == "equivalence") {
    const auto corpus = base_corpus(o, true);
    const auto r = equivalence_report(corpus, alpha, o.sizes, cube_family(o), profile_family(o));
    std::size_t flagged = 0;
    for (const auto& t : r.trends) flagged += t.flagged ? 1 : 0;
    emit("equivalence", to_json(r), to_csv(r),
         {"c_low " + format_double(r.c_low), "c_high " + format_double(r.c_high),
          "spread " + format_double(r.spread()), "flagged " + std::to_string(flagged)});
  } else if (o.check == "fubini") {
    const auto corpus = base_corpus(o, false);
    const int cube_levels = o.level_max < 0 ? 2 : o.level_max;
    const int depth = o.K.value_or(3);
    FubiniSweep total;
    for (int size : o.sizes) {
      const auto s = fubini_sweep(resized(corpus, size), o.alphas, cube_levels, depth);
      if (total.checks == 0 || s.max_discrepancy > total.max_discrepancy) {
        const auto checks = total.checks;
        total = s;
        total.checks += checks;
      } else {
        total.checks += s.checks;
      }
    }
    emit("fubini", to_json(total), to_csv(total),
         {"checks " + std::to_string(total.checks), "max discrepancy " + format_double(total.max_discrepancy)});
  } else if (o.check == "lemma23") {
    const auto corpus = base_corpus(o, false);
    std::vector<Lemma23Record> records;
    for (int size : o.sizes) {
      for (const auto& spec : resized(corpus, size)) {
        auto rec = lemma23_check(generate(spec), alpha, o.m, Cube::unit(o.n), o.K.value_or(0), cube_family(o));
        rec.id = spec.id + "@" + std::to_string(size);
        records.push_back(rec);
      }
    }
    double worst = 0.0;
    for (const auto& r : records) worst = std::max(worst, r.ratio);
    emit("lemma23", lemma23_json(records), lemma23_csv(records),
         {"records " + std::to_string(records.size()), "max ratio " + format_double(worst)});
  } else if (o.check == "decay") {
    const auto d = kernel_decay_check(alpha, o.m, o.n, o.pairs, o.seed, o.extra_levels);
    emit("decay", to_json(d), to_csv(d),
         {"slope " + format_double(d.slope) + " (expected " + format_double(-(2.0 * alpha + o.n)) + ")",
          "max_full_product " + format_double(d.max_full_product),
          "max_second " + std::to_string(d.max_second),
          "max_first_normalized " + format_double(d.max_first_normalized)});
  } else {
    const auto corpus = base_corpus(o, false);
    std::vector<CorpusSpec> all;
    for (int size : o.sizes) {
      const auto c = resized(corpus, size);
      all.insert(all.end(), c.begin(), c.end());
    }
    const auto r = embedding_check(all, alpha, cube_family(o));
    emit("embedding", to_json(r), to_csv(r),
         {"max ratio " + format_double(r.max_ratio), std::string("violation ") + (r.violation ? "yes" : "no")});
  }
}

// ---- option registration ----------------------------------------------------

void add_common(CLI::App* sub, Options& o, bool report) {
  sub->add_option("--n", o.n, "Spatial dimension, 1 or 2")->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads, 0 for hardware concurrency; output does not depend on it")
      ->capture_default_str();
  if (report) {
    sub->add_option("--out", o.out, "Report file; default $LPQ_OUTPUT_DIR/<command>.<format>, else stdout");
    sub->add_option("--format", o.format, "Report format; default from the --out extension, else json")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

void add_sizes(CLI::App* sub, Options& o, const std::string& help) {
  sub->add_option("--size", o.sizes, help)->capture_default_str()->delimiter(',');
}

void add_function_source(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Grid file (header 'n N', then row-major values)")->check(CLI::ExistingFile);
  sub->add_option("--kind", o.kind,
                  "Generate the function instead: constant, harmonic, gaussian_bump, smoothed_step, "
                  "spectral_noise, schwartz_like");
  sub->add_option("--seed", o.seed, "Seed for spectral_noise")->capture_default_str();
  sub->add_option("--value", o.value, "constant: the value")->capture_default_str();
  sub->add_option("--frequency", o.frequency, "harmonic: integer frequency, one or two components")
      ->capture_default_str()
      ->delimiter(',');
  sub->add_option("--width", o.width, "gaussian_bump, schwartz_like: width")->capture_default_str();
  sub->add_option("--sharpness", o.sharpness, "smoothed_step: steepness of the step")->capture_default_str();
  sub->add_option("--slope", o.slope, "spectral_noise: decay s in |fhat| = |xi|^(-s - n/2)")->capture_default_str();
}

void add_family(CLI::App* sub, Options& o) {
  sub->add_option("--level-max", o.level_max, "Deepest dyadic cube level; -1 selects L - 3")->capture_default_str();
  sub->add_option("--shifted", o.shifted, "Include the half-shifted dyadic cubes (true/false)")
      ->capture_default_str();
}

void add_profile(CLI::App* sub, Options& o) {
  sub->add_option("--profile", o.profile, "Cutoff family: exponential or log_exponential")
      ->capture_default_str()
      ->check(CLI::IsMember({"exponential", "log_exponential"}));
  sub->add_option("--j-min", o.j_min, "First band; lower frequencies form the lowpass")->capture_default_str();
}

void add_alpha(CLI::App* sub, Options& o, const std::string& help) {
  sub->add_option("--alpha", o.alphas, help)->capture_default_str()->expected(1);
}

void add_corpus(CLI::App* sub, Options& o, const std::string& fallback) {
  sub->add_option("--corpus", o.corpus, "Corpus JSON; entries are resized to --n and --size. Default: " + fallback)
      ->check(CLI::ExistingFile);
}

void build(CLI::App& app, Options& o, std::string& command) {
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Sample a test function or write a corpus");
  add_common(gen, o, false);
  gen->add_option("--out", o.out, "Output grid file, or directory with --corpus; default $LPQ_OUTPUT_DIR");
  add_sizes(gen, o, "Grid size N");
  add_function_source(gen, o);
  gen->remove_option(gen->get_option("--input"));
  add_corpus(gen, o, "none");
  gen->add_option("--catalogue", o.catalogue, "Write a built-in corpus as JSON: default or converged")
      ->check(CLI::IsMember({"default", "converged"}));
  add_alpha(gen, o, "Exponent used to pick the built-in noise slopes");
  gen->callback([&] { command = "gen"; });

  auto* norm = app.add_subcommand("norm", "Evaluate one norm over the dyadic cube family");
  norm->add_option("norm", o.norm_kind, "Norm: qalpha, campanato, lpmorrey, dyadiclp or mb")
      ->required()
      ->check(CLI::IsMember({"qalpha", "campanato", "lpmorrey", "dyadiclp", "mb"}));
  add_common(norm, o, true);
  add_sizes(norm, o, "Grid size N");
  add_function_source(norm, o);
  add_alpha(norm, o, "Smoothness alpha");
  norm->add_option("--lambda", o.lambda, "campanato: exponent lambda")->capture_default_str();
  norm->add_option("--sigma", o.sigma, "mb: Morrey exponent sigma; default n - 2 alpha");
  norm->add_option("--K", o.K, "dyadiclp: subcube depth, default 0");
  add_family(norm, o);
  add_profile(norm, o);
  norm->callback([&] { command = "norm"; });

  auto* dec = app.add_subcommand("decompose", "Littlewood-Paley band energies of a function");
  add_common(dec, o, true);
  add_sizes(dec, o, "Grid size N");
  add_function_source(dec, o);
  add_profile(dec, o);
  dec->add_flag("--profiles", o.profiles_table, "Write the multiplier table instead of band energies");
  dec->callback([&] { command = "decompose"; });

  auto* kernel = app.add_subcommand("kernel", "Sample the cube kernel on random point pairs");
  add_common(kernel, o, true);
  add_alpha(kernel, o, "Smoothness alpha");
  kernel->add_option("--m", o.m, "Dilation factor m >= 2")->capture_default_str();
  kernel->add_option("--pairs", o.pairs, "Number of point pairs")->capture_default_str();
  kernel->add_option("--seed", o.seed, "Sampler seed")->capture_default_str();
  kernel->add_option("--extra-levels", o.extra_levels, "Dyadic levels beyond the required depth")
      ->capture_default_str();
  kernel->callback([&] { command = "kernel"; });

  auto* verify = app.add_subcommand("verify", "Run one verification and write its report");
  verify->add_option("check", o.check, "Check: equivalence, fubini, lemma23, decay or embedding")
      ->required()
      ->check(CLI::IsMember({"equivalence", "fubini", "lemma23", "decay", "embedding"}));
  add_common(verify, o, true);
  add_sizes(verify, o, "Grid sizes N, ascending (comma separated or repeated)");
  verify->add_option("--alpha", o.alphas, "Smoothness alpha; fubini accepts several")
      ->capture_default_str()
      ->delimiter(',');
  add_corpus(verify, o, "built-in (converged members for equivalence)");
  verify->add_option("--m", o.m, "lemma23, decay: dilation factor m >= 2")->capture_default_str();
  verify->add_option("--K", o.K, "lemma23: subcube depth, default 0; fubini: deepest K, default 3");
  add_family(verify, o);
  verify->get_option("--level-max")->description("Deepest cube level; -1 selects L - 3 (fubini: 2)");
  verify->add_option("--profile", o.profile, "Cutoff family: exponential or log_exponential")
      ->capture_default_str()
      ->check(CLI::IsMember({"exponential", "log_exponential"}));
  verify->add_option("--pairs", o.pairs, "decay: number of point pairs")->capture_default_str();
  verify->add_option("--seed", o.seed, "decay: sampler seed")->capture_default_str();
  verify->add_option("--extra-levels", o.extra_levels, "decay: dyadic levels beyond the required depth")
      ->capture_default_str();
  verify->callback([&] { command = "verify " + o.check; });
}

void dispatch(const Options& o, const std::string& command, std::ostream& out) {
  if (command == "gen") {
    run_gen(o, out);
  } else if (command == "norm") {
    run_norm(o, out);
  } else if (command == "decompose") {
    run_decompose(o, out);
  } else if (command == "kernel") {
    run_kernel(o, out);
  } else {
    run_verify(o, out);
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string command;
  CLI::App app{"Q_alpha and Littlewood-Paley Morrey norm lab", "lpq"};
  build(app, o, command);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lpq: " << one_line(e.what()) << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return kConfigError;
  }

  // Route warnings to the error stream for the duration of the run.
  set_warning_handler([&err](const std::string& m) { err << "lpq: warning: " << m << "\n"; });
  struct Restore {
    ~Restore() {
      set_warning_handler([](const std::string& m) { std::cerr << "warning: " << m << '\n'; });
      parallel::set_worker_count(1);
    }
  } restore;

  try {
    validate(o, command);
    parallel::set_worker_count(o.threads);
    dispatch(o, command, out);
  } catch (const ConfigError& e) {
    err << "lpq: " << one_line(e.what()) << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "lpq: " << one_line(e.what()) << "\n";
    return kConfigError;
  } catch (const InvariantError& e) {
    err << "lpq: internal error: " << one_line(e.what()) << "\n";
    return kInternalError;
  } catch (const fs::filesystem_error& e) {
    err << "lpq: " << one_line(e.what()) << "\n";
    return kConfigError;
  }
  return kOk;
}

}  // namespace lpq::cli
