/** Ordering of the measurement cut relative to the dynamics propagation. */
#pragma once

#include <string>

#include "lagset/errors.hpp"

namespace lagset {

enum class StepMode { UpdateThenPropagate, PropagateThenUpdate };

inline const char* mode_name(StepMode m) {
    return m == StepMode::UpdateThenPropagate ? "utp" : "ptu";
}

inline StepMode parse_mode(const std::string& s) {
    if (s == "utp") return StepMode::UpdateThenPropagate;
    if (s == "ptu") return StepMode::PropagateThenUpdate;
    throw Error("unknown step mode: " + s);
}

}  // namespace lagset
