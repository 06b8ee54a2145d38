#pragma once

#include "minkmom/moments.hpp"

#include <string>

namespace minkmom {

/// Serializes a moment vector as JSON with decimal-string values (never
/// binary floats) plus the metadata needed to reuse it: digits, order,
/// backend, iterations, convergence diagnostics.
void save_checkpoint(const MomentVector& m, const std::string& path);

std::string checkpoint_to_json(const MomentVector& m);

struct LoadedCheckpoint {
    MomentVector moments;
    /// True when the checkpoint stores fewer digits than requested: the
    /// caller must re-iterate (warm start) instead of silently reusing it.
    bool needs_reiteration = false;
};

LoadedCheckpoint load_checkpoint(const std::string& path, int requested_digits);
LoadedCheckpoint checkpoint_from_json(const std::string& text, int requested_digits);

} // namespace minkmom
