#pragma once

#include <iosfwd>

#include "davinci/embed_defect.hpp"
#include "davinci/form_find.hpp"
#include "davinci/periodic_pattern.hpp"

namespace davinci {

// Rod line drawing of a pattern replicated n x n, with short stubs past
// the boundary notches.
void export_pattern_svg(std::ostream& out, const PeriodicPattern& p, int repeat);

// Rod drawing of a finite patch.
void export_patch_svg(std::ostream& out, const PatternPatch& patch);

// Wavefront OBJ of an embedding; faces are emitted only when the map is
// fully triangulated, edges as line elements otherwise.
void export_obj(std::ostream& out, const Embedding3D& e);

// Rod centerlines of a form-found solution as OBJ line segments.
void export_solution_obj(std::ostream& out, const Solution& s);

}  // namespace davinci
