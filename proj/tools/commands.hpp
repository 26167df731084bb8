#pragma once

#include <optional>
#include <string>

namespace swimlab::cli {

struct Common {
  std::string output_dir;  // resolved before any command runs
};

struct ModalArgs {
  std::string config;
  int modes = 5;
};

struct FrfArgs {
  std::string config;
  std::string group = "L1";
  int repetitions = 0;  // 0: from config
};

struct SimulateArgs {
  std::string config;
  std::string gait;   // empty: from config
  double freq = 0.0;  // 0: from config
  std::string phases; // "L1=..,L2=..": implies custom
};

struct AnalyzeArgs {
  std::string log;
  double freq = 0.0;
  std::string config;
  std::string gait;  // labels the row like simulate does
};

struct SweepArgs {
  std::string config;
  int workers = -1;  // -1: from config
};

struct ReportArgs {
  std::string dir;
};

struct CalibrateArgs {
  std::string config;
};

struct LaebtArgs {
  double v1_mms = 0.0, v2_mms = 0.0;
  double t1_mn = 0.0, t2_mn = 0.0;
};

struct SpeedArgs {
  std::string config;
  double thrust_mn = 0.0;
};

/// Each command writes only below common.output_dir and prints a short summary.
int run_modal(const Common& c, const ModalArgs& a);
int run_frf(const Common& c, const FrfArgs& a);
int run_simulate(const Common& c, const SimulateArgs& a);
int run_analyze(const Common& c, const AnalyzeArgs& a);
int run_sweep(const Common& c, const SweepArgs& a);
int run_report(const Common& c, const ReportArgs& a);
int run_calibrate(const Common& c, const CalibrateArgs& a);
int run_laebt(const Common& c, const LaebtArgs& a);
int run_speed(const Common& c, const SpeedArgs& a);

}  // namespace swimlab::cli
