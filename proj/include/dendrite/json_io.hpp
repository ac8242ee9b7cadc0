#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "dendrite/conjugacy.hpp"
#include "dendrite/general_ifs.hpp"
#include "dendrite/quadratic.hpp"
#include "dendrite/rational_gallery.hpp"
#include "dendrite/series.hpp"
#include "dendrite/tent_system.hpp"

namespace dendrite {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z);
std::string format_signs(const std::vector<int>& word);

Json to_json(const DiskRoot& root);
Json to_json(const JuliaContext& ctx);
/// Fields `tag`, `depth`, `survivors`, `witnesses`, then diagnostics.
Json to_json(const TVerdict& verdict, const std::vector<OverlapWitness>& witnesses);
Json to_json(const BTReport& report);
Json to_json(const QSReport& report);
Json to_json(const LnBound& bound);
Json to_json(const C1Report& report);
Json to_json(const GalleryReport& report);
Json to_json(const PairedSystem& ps);

/// Header `re,im,residual,certified`; values with 17 significant digits.
void write_roots_csv(std::ostream& out, const std::vector<DiskRoot>& roots);
/// Header `re,im` or `re,im,address`.
void write_cloud_csv(std::ostream& out, const std::vector<CloudPoint>& points);
void write_points_csv(std::ostream& out, const std::vector<Complex>& points);

}  // namespace dendrite
