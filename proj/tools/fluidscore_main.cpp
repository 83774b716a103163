// fluidscore CLI: validate encoded scores, run the flow analysis, and emit
// scatter plots.
//
// Exit codes: 0 success, 2 syntax error in the input, 3 input I/O error,
// 4 invalid configuration, 5 unwritable output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fluidscore/flow.h"
#include "fluidscore/parse.h"
#include "fluidscore/pathline.h"
#include "fluidscore/plot.h"
#include "fluidscore/report.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSyntax = 2;
constexpr int kExitInputIo = 3;
constexpr int kExitConfig = 4;
constexpr int kExitOutputIo = 5;

struct Options {
  std::string input;
  int window_size = 8;
  int min_spot_layers = 2;
  std::string y_range = "auto";
  std::string out;
  std::string format;
  std::string config_file;
};

int validateOptions(const Options& opt) {
  if (opt.window_size < 2) {
    std::cerr << "config error: window_size must be at least 2\n";
    return kExitConfig;
  }
  if (opt.min_spot_layers < 2) {
    std::cerr << "config error: turbulence_min_layers_with_spots must be at least 2\n";
    return kExitConfig;
  }
  if (opt.y_range != "auto" && opt.y_range != "table6") {
    std::cerr << "config error: y_range must be 'auto' or 'table6'\n";
    return kExitConfig;
  }
  return kExitOk;
}

// TOML-style key = value lines; '#' starts a comment. Flags win over file
// values, so the file is applied only where the flag was left at default.
int applyConfigFile(const std::string& path, Options& opt,
                    const std::map<std::string, bool>& flag_given) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "config error: cannot read config file '" << path << "'\n";
    return kExitConfig;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    {
      std::istringstream ss(line);
      std::string word;
      while (ss >> word) {
        if (!trimmed.empty()) trimmed += ' ';
        trimmed += word;
      }
    }
    if (trimmed.empty()) continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      std::cerr << "config error: " << path << ":" << line_no
                << ": expected 'key = value'\n";
      return kExitConfig;
    }
    std::string key = trimmed.substr(0, eq);
    std::string value = trimmed.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());

    auto given = [&](const std::string& k) {
      auto it = flag_given.find(k);
      return it != flag_given.end() && it->second;
    };
    try {
      if (key == "window_size") {
        if (!given(key)) opt.window_size = std::stoi(value);
      } else if (key == "turbulence_min_layers_with_spots") {
        if (!given(key)) opt.min_spot_layers = std::stoi(value);
      } else if (key == "y_range") {
        if (!given(key)) opt.y_range = value;
      } else if (key == "out") {
        if (!given(key)) opt.out = value;
      } else {
        std::cerr << "config error: " << path << ":" << line_no
                  << ": unknown key '" << key << "'\n";
        return kExitConfig;
      }
    } catch (const std::exception&) {
      std::cerr << "config error: " << path << ":" << line_no
                << ": malformed value for '" << key << "'\n";
      return kExitConfig;
    }
  }
  return kExitOk;
}

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool writeFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(out);
}

struct LoadedScore {
  fluidscore::Score score;
  std::vector<fluidscore::Pathline> pathlines;
  fluidscore::FlowAnalysis analysis;
};

int loadAndAnalyze(const Options& opt, LoadedScore& out) {
  auto text = readFile(opt.input);
  if (!text) {
    std::cerr << "error: cannot read input file '" << opt.input << "'\n";
    return kExitInputIo;
  }
  try {
    out.score = fluidscore::parseScore(*text);
  } catch (const fluidscore::ParseError& e) {
    std::cerr << "error: " << opt.input << ": " << e.what() << "\n";
    return kExitSyntax;
  }
  out.score.source_path = opt.input;
  out.pathlines = fluidscore::extractPathlines(out.score);
  fluidscore::FlowConfig cfg{opt.window_size, opt.min_spot_layers};
  out.analysis =
      fluidscore::analyzeFlow(out.pathlines, out.score.tick_count, cfg);
  return kExitOk;
}

int cmdValidate(const Options& opt) {
  auto text = readFile(opt.input);
  if (!text) {
    std::cerr << "error: cannot read input file '" << opt.input << "'\n";
    return kExitInputIo;
  }
  try {
    fluidscore::Score s = fluidscore::parseScore(*text);
    std::cerr << opt.input << ": OK (" << s.tick_count << " ticks, "
              << s.events.size() << " events)\n";
  } catch (const fluidscore::ParseError& e) {
    std::cerr << "error: " << opt.input << ": " << e.what() << "\n";
    return kExitSyntax;
  }
  return kExitOk;
}

int cmdAnalyze(const Options& opt) {
  LoadedScore loaded;
  if (int rc = loadAndAnalyze(opt, loaded); rc != kExitOk) return rc;
  fluidscore::FlowConfig cfg{opt.window_size, opt.min_spot_layers};
  std::string json = fluidscore::buildReportJson(loaded.score, loaded.pathlines,
                                                 loaded.analysis, cfg);
  if (opt.out.empty()) {
    std::cout << json;
    return kExitOk;
  }
  if (!writeFile(opt.out, json)) {
    std::cerr << "error: cannot write '" << opt.out << "'\n";
    return kExitOutputIo;
  }
  std::cerr << "wrote " << opt.out << "\n";
  return kExitOk;
}

int cmdPlot(const Options& opt) {
  LoadedScore loaded;
  if (int rc = loadAndAnalyze(opt, loaded); rc != kExitOk) return rc;

  std::string stem = std::filesystem::path(opt.input).stem().string();
  std::string dir = opt.out.empty() ? "." : opt.out;
  std::string bytes;
  std::string path;
  if (opt.format == "svg") {
    fluidscore::PlotSpec spec;
    spec.y_range = opt.y_range == "table6" ? fluidscore::YRangeMode::Table6
                                           : fluidscore::YRangeMode::Auto;
    bytes = fluidscore::emitScatterSvg(loaded.score, loaded.pathlines,
                                       loaded.analysis.phases, spec);
    path = dir + "/" + stem + ".svg";
  } else {
    bytes = fluidscore::emitScatterCsv(loaded.score, loaded.pathlines,
                                       loaded.analysis.phases);
    path = dir + "/" + stem + ".csv";
  }
  if (!writeFile(path, bytes)) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitOutputIo;
  }
  std::cout << path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic-flow analysis of symbolically encoded scores"};
  app.require_subcommand(1);

  Options opt;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("file", opt.input, "Input score file")->required();
    cmd->add_option("--window", opt.window_size,
                    "Sliding phase-window size in ticks (>= 2)");
    cmd->add_option("--turbulence-min-layers", opt.min_spot_layers,
                    "Layers with spots required for a turbulent window (>= 2)");
    cmd->add_option("--config", opt.config_file,
                    "Config file (overrides FLUIDSCORE_CONFIG)");
  };

  CLI::App* validate = app.add_subcommand("validate", "Parse and check an input file");
  validate->add_option("file", opt.input, "Input score file")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Emit the analysis report as JSON");
  addCommon(analyze);
  analyze->add_option("--out", opt.out, "Write the report here instead of stdout");

  CLI::App* plot = app.add_subcommand("plot", "Emit a scatter plot (SVG or CSV)");
  addCommon(plot);
  plot->add_option("--format", opt.format, "svg or csv")
      ->required()
      ->check(CLI::IsMember({"svg", "csv"}));
  plot->add_option("--y-range", opt.y_range, "auto (data extent) or table6 ([-24, 47])");
  plot->add_option("--out", opt.out, "Output directory (default '.')");

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  auto flagGiven = [&](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  std::map<std::string, bool> flag_given = {
      {"window_size", flagGiven("--window")},
      {"turbulence_min_layers_with_spots", flagGiven("--turbulence-min-layers")},
      {"y_range", flagGiven("--y-range")},
      {"out", flagGiven("--out")},
  };

  std::string config_path = opt.config_file;
  if (config_path.empty()) {
    if (const char* env = std::getenv("FLUIDSCORE_CONFIG")) config_path = env;
  }
  if (!config_path.empty() && sub != validate) {
    if (int rc = applyConfigFile(config_path, opt, flag_given); rc != kExitOk) {
      return rc;
    }
  }
  if (sub != validate) {
    if (int rc = validateOptions(opt); rc != kExitOk) return rc;
  }

  if (sub == validate) return cmdValidate(opt);
  if (sub == analyze) return cmdAnalyze(opt);
  return cmdPlot(opt);
}
