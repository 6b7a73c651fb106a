#pragma once

#include <string>
#include <vector>

#include "davinci/periodic_pattern.hpp"

namespace davinci {

// Symmetry element of the decorated pattern, written in lattice
// coordinates: x -> M x + t with M integer unimodular and t taken
// mod Z^2. Rotation order is derived from trace(M); for det -1 the
// element is a mirror when some lattice representative has zero glide
// component along the axis, otherwise a glide.
struct SymmetryElement {
    int m[2][2];
    RVec2 t;
    int det = 1;
    int rotation_order = 1;  // 1 for identity/reflections
    bool is_mirror = false;
    bool is_glide = false;
};

struct WallpaperClass {
    std::string name;  // IUC symbol, e.g. "pgg"
    int max_rotation_order = 1;
    int mirror_count = 0;  // det -1 classes acting as true mirrors
    int glide_count = 0;   // det -1 classes with nonzero reduced glide
    std::vector<SymmetryElement> elements;
};

// Detects the wallpaper group of the decorated pattern (vertices,
// edges and the rod partition when present) by the standard decision
// tree over rotation orders and mirror/glide axes. Deterministic and
// invariant under unimodular lattice re-parameterization.
WallpaperClass classify_wallpaper(const PeriodicPattern& p);

}  // namespace davinci
