#pragma once

// Batch command-line front end. Each command returns a process exit code:
//   0 success, 1 usage error, 2 data/validation error, 3 partial batch failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "hermite_ecg/analysis.hpp"
#include "hermite_ecg/fixtures.hpp"
#include "hermite_ecg/signal_model.hpp"

namespace hermite_ecg {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitPartial = 3,
};

struct CliConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path output_dir = ".";
  AnalysisConfig analysis;
};

inline std::filesystem::path analysis_output_path(const CliConfig& config, const std::string& record_id,
                                                  int peak_index) {
  return config.output_dir / (record_id + ".peak" + std::to_string(peak_index) + ".analysis.json");
}

inline int cmd_list(const std::filesystem::path& dataset_dir, std::ostream& out, std::ostream& err) {
  Dataset ds;
  try {
    ds = load_dataset(dataset_dir);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  for (const auto& f : ds.failures) err << "warning: skipped " << f.path.string() << ": " << f.message << "\n";
  for (Label label : {Label::healthy, Label::diseased}) {
    std::vector<const EcgRecord*> group;
    for (const auto& r : ds.records) {
      if (r.label == label) group.push_back(&r);
    }
    if (group.empty()) continue;
    out << to_string(label) << " (" << group.size() << ")\n";
    for (const auto* r : group) {
      out << "  " << r->id << "  samples=" << r->samples.size() << "  peaks=" << r->r_peaks.size()
          << "  fs_hz=" << detail::format_double(r->fs_hz) << "\n";
    }
  }
  out << ds.records.size() << " records\n";
  return kExitOk;
}

inline int cmd_analyze(const CliConfig& config, const std::string& record_id, int peak_index,
                       std::ostream& out, std::ostream& err) {
  try {
    validate_config(config.analysis);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const auto ds = load_dataset(config.dataset_dir);
    const auto& record = ds.at(record_id);
    const auto payload = build_analysis_payload(record, peak_index, config.analysis);
    std::filesystem::create_directories(config.output_dir);
    const auto path = analysis_output_path(config, record_id, peak_index);
    detail::write_text(path, payload.dump(2) + "\n");
    out << path.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

/// Writes <output_dir>/summary.csv, rows ordered by record id then peak.
inline int cmd_batch(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config.analysis);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Dataset ds;
  try {
    ds = load_dataset(config.dataset_dir);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  std::size_t failures = ds.failures.size();
  for (const auto& f : ds.failures) err << "error: " << f.path.string() << ": " << f.message << "\n";

  std::string csv = std::string(kBatchHeader) + "\n";
  std::size_t rows = 0;
  for (const auto& record : ds.records) {
    for (int p = 0; p < static_cast<int>(record.r_peaks.size()); ++p) {
      try {
        csv += format_batch_row(analyze_peak_summary(record, p, config.analysis)) + "\n";
        ++rows;
      } catch (const Error& e) {
        err << "error: " << record.id << " peak " << p << ": " << e.what() << "\n";
        ++failures;
      }
    }
  }
  try {
    std::filesystem::create_directories(config.output_dir);
    const auto path = config.output_dir / "summary.csv";
    detail::write_text(path, csv);
    out << path.string() << ": " << rows << " rows, " << failures << " failures\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return failures == 0 ? kExitOk : kExitPartial;
}

inline int cmd_make_fixtures(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  try {
    const int n = write_fixture_dataset(dir);
    out << "wrote " << n << " records to " << dir.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

inline void add_analysis_options(CLI::App& cmd, CliConfig& config) {
  auto& a = config.analysis;
  cmd.add_option("-o,--output-dir", config.output_dir, "Directory for output files")
      ->capture_default_str();
  cmd.add_option("--window", a.window, "Segment length W (odd)")->capture_default_str();
  cmd.add_option("--delta0", a.spec.delta0, "First scaling factor of the grid")->capture_default_str();
  cmd.add_option("--delta-max", a.spec.delta_max, "Last scaling factor of the grid")->capture_default_str();
  cmd.add_option("--delta-step", a.spec.delta_step, "Scaling factor grid step")->capture_default_str();
  cmd.add_option("--tau-min", a.spec.tau_min, "Smallest window shift (samples)")->capture_default_str();
  cmd.add_option("--tau-max", a.spec.tau_max, "Largest window shift (samples)")->capture_default_str();
  cmd.add_option_function<std::string>(
         "--pad", [&a](const std::string& v) { a.pad = parse_pad_policy(v); },
         "Out-of-record samples: error or zero")
      ->check(CLI::IsMember({"error", "zero"}))
      ->default_str("error");
  cmd.add_flag("--demean", a.demean, "Subtract the segment mean");
  cmd.add_flag("--full-grid", a.full_grid, "Include every (tau, delta) cell in the report");
}

/// Entry point shared by the executable and the tests. `args` excludes
/// the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite-transform ECG/QRS analysis"};
  app.require_subcommand(1);

  CliConfig config;
  std::string record_id;
  int peak_index = 0;
  std::filesystem::path fixtures_dir;

  auto* list = app.add_subcommand("list", "List the records of a dataset");
  list->add_option("dataset", config.dataset_dir, "Dataset directory")->required();

  auto* analyze = app.add_subcommand("analyze", "Write the analysis payload for one peak");
  analyze->add_option("dataset", config.dataset_dir, "Dataset directory")->required();
  analyze->add_option("record", record_id, "Record id")->required();
  analyze->add_option("peak", peak_index, "Peak index (0-based)")->required();
  add_analysis_options(*analyze, config);

  auto* batch = app.add_subcommand("batch", "Summarize every peak of a dataset to summary.csv");
  batch->add_option("dataset", config.dataset_dir, "Dataset directory")->required();
  add_analysis_options(*batch, config);

  auto* fixtures = app.add_subcommand("make-fixtures", "Write the synthetic demo dataset");
  fixtures->add_option("dir", fixtures_dir, "Output dataset directory")->required();

  // CLI11 parses a reversed vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (list->parsed()) return cmd_list(config.dataset_dir, out, err);
  if (analyze->parsed()) return cmd_analyze(config, record_id, peak_index, out, err);
  if (batch->parsed()) return cmd_batch(config, out, err);
  return cmd_make_fixtures(fixtures_dir, out, err);
}

}  // namespace hermite_ecg
