#pragma once

#include <string>
#include <vector>

#include "fpsc/pieces.hpp"
#include "fpsc/pipeline.hpp"
#include "fpsc/presentation.hpp"
#include "fpsc/wallspace.hpp"

namespace fpsc {

// JSON renderings with a fixed field order so identical inputs give identical
// bytes; with_timestamp adds a "generated" field and breaks that on purpose.
std::string star_report_json(const StarReport& rep, const Presentation& pres,
                             bool with_timestamp);
std::string build_report_json(const BuildReport& rep, bool with_timestamp);

// Dual-complex summary of one cone's restricted antipodal wallspace.
struct DualSummary {
  int relator = 0;
  long long circle_length = 0;
  long long wall_count = 0;
  long long letter_wall_count = -1;
  bool dualized = false;       // false when the wall count is over the dual cap
  long long vertices = 0;
  long long edge_count = 0;
  int dimension = 0;
  bool connected = false;
  bool median_ok = false;
  std::string note;
};
std::string dual_summaries_json(const std::vector<DualSummary>& ds, long long q,
                                bool with_timestamp);

std::string star_report_text(const StarReport& rep);
std::string build_report_text(const BuildReport& rep);

// One-object summaries of stored artifacts.
std::string presentation_summary_json(const Presentation& pres);
std::string complex_summary_json(const CubeComplex& X, long long hyperplane_count);
std::string wallspace_summary_json(const FiniteWallspace& W, long long crossing_pairs);

}  // namespace fpsc
