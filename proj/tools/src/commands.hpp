#ifndef QGV_TOOLS_COMMANDS_HPP
#define QGV_TOOLS_COMMANDS_HPP

#include <string>

namespace qgv_cli {

// Exit codes shared by every subcommand, so shell pipelines can branch on
// the failure class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;        // generic error or failed check
inline constexpr int kExitParse = 2;          // unreadable or malformed input
inline constexpr int kExitNotUnitary = 3;     // input matrix fails unitarity
inline constexpr int kExitOutsideFamily = 4;  // more than two eigenvalues
inline constexpr int kExitNotEquallyTransmitting = 5;
inline constexpr int kExitCOutOfRange = 6;   // design target outside range
inline constexpr int kExitOrderTooLarge = 7;  // search order above the cap

struct GridOptions {
  double k_min = 0.01;
  double k_max = 100.0;
  int points = 61;
  bool linear = false;
};

struct ClassifyOptions {
  std::string input;
  double tol = 1e-10;
  std::string output;  // empty: stdout
};

struct ScatterOptions {
  std::string input;
  double tol = 1e-10;
  GridOptions grid;
  std::string output;
};

struct RhoOptions {
  std::string input;
  double tol = 1e-10;
  GridOptions grid;
  std::string output;
};

struct DesignOptions {
  std::string type;                  // "II", "III" or "IV"
  std::string m_source = "standard";  // "standard" or "file"
  std::string m_file;
  int m_sign = 1;
  int n = 0;
  double c = 0.0;
  double xi = 0.0;
  bool has_xi = false;
  int sign = -1;
  double tol = 1e-10;
  std::string output;
};

struct SearchOptions {
  int n = 0;
  double tol = 1e-10;
  std::string output;
};

struct VerifyOptions {
  std::string input;
  double tol = 1e-10;
  GridOptions grid;
};

int cmd_classify(const ClassifyOptions& opts);
int cmd_scatter(const ScatterOptions& opts);
int cmd_rho(const RhoOptions& opts);
int cmd_design(const DesignOptions& opts);
int cmd_search_mps(const SearchOptions& opts);
int cmd_verify(const VerifyOptions& opts);

}  // namespace qgv_cli

#endif  // QGV_TOOLS_COMMANDS_HPP
