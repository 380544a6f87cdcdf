#pragma once

#include <string>
#include <vector>

#include "discocat/derivation.hpp"
#include "discocat/reduction.hpp"
#include "discocat/types.hpp"

namespace discocat {

struct DiagramError : std::runtime_error {
    explicit DiagramError(const std::string& what) : std::runtime_error(what) {}
};

// Pregroup cancellation diagram: words on the top row, their simple
// types beneath, cups under cancelled pairs and straight drops for the
// residual types.  Innermost links render as `cup` paths; links that
// enclose further links render as `nested-string` paths (the multi-step
// strings of a nested reduction).  Output is byte-deterministic.
std::string render_cancellation(const Reduction& r, const std::vector<std::string>& words,
                                const std::vector<PregroupType>& word_types);

// Clasp-string diagram for a derivation over the given words.  Word
// types are expanded to directed basic wires (implication antecedents
// point upward) with one clasp per implication node; each evaluation
// draws an ellipse blob containing the cups that route the argument
// into the function, and curry/name constructors draw rounded
// rectangles with the introduced clasped pair.  The final (fully
// rewritten) diagram is emitted.
std::string render_baez_stay(const Derivation& d, const std::vector<std::string>& words);

// Element counts parsed back out of a rendered SVG, for tests.
struct DiagramStats {
    std::size_t cups = 0;
    std::size_t nested_strings = 0;
    std::size_t residuals = 0;
    std::size_t clasps = 0;
    std::size_t blobs = 0;
    std::size_t curry_blobs = 0;
    std::size_t wires = 0;
};

DiagramStats svg_stats(const std::string& svg);

}  // namespace discocat
