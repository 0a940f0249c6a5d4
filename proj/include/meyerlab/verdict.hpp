#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "box.hpp"
#include "scalar.hpp"

namespace meyerlab {

/// A counterexample. For inclusion checks t1, t2 are the two translations
/// whose difference escapes; other checks document their own use.
template <Scalar S>
struct Witness {
    Point<S> t1;
    Point<S> t2;
    std::string note;
    std::optional<double> value;
};

/// Per-parameter statistics of a ladder check (one entry per K' or δ).
template <Scalar S>
struct CandidateReport {
    S parameter{};
    std::size_t times = 0;
    std::size_t tested_pairs = 0;
    std::size_t violations = 0;
    bool relatively_dense = false;
    std::optional<S> covering_radius;
    bool passed = false;
};

template <Scalar S>
struct Verdict {
    std::string check;
    bool pass = false;
    /// The ladder entry that passed (K' or δ), when any.
    std::optional<S> selected;
    std::vector<Witness<S>> witnesses;
    std::optional<S> covering_radius;
    Box<S> validity;
    std::vector<CandidateReport<S>> candidates;
    /// Named sub-results of composite checks.
    std::vector<std::pair<std::string, bool>> parts;
    std::vector<std::string> notes;
};

}  // namespace meyerlab
