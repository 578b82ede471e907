#pragma once

#include "gradeq/systems.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gradeq::testing {

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(GRADEQ_FIXTURE_DIR) + "/" + name);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline LabelledTransitionSystem sys1() {
    return parse_aut(fixture_text("sys1.aut"));
}
/// Over {a, b, c}; c labels no transition.
inline LabelledTransitionSystem sys2() {
    return parse_aut(fixture_text("sys2.aut"), nullptr, {"a", "b", "c"});
}
inline LabelledTransitionSystem sys3() {
    return parse_aut(fixture_text("sys3.aut"));
}
inline ProbabilisticTransitionSystem sys4() {
    return parse_pts(fixture_text("sys4.pts"));
}
inline ProbabilisticTransitionSystem sys4_skewed() {
    return parse_pts(fixture_text("sys4_skewed.pts"));
}

} // namespace gradeq::testing
