#pragma once

// Grid evaluation of the inversion sums. `serial` evaluates point by point
// through the scalar API and is the reference; `parallel` precomputes the
// per-photon-number tables once and splits the time grid across OpenMP
// threads. Each time point is owned by one thread, so the output does not
// depend on the thread count.

#include <span>
#include <vector>

#include "dqed/jc_model.hpp"

namespace dqed {

namespace serial {

std::vector<double> standard_inversion(std::span<const double> t, const PhysParams& p, int n_max);
std::vector<double> modified_inversion(std::span<const double> t, std::span<const double> nbb, const PhysParams& p,
                                       int n_max);

} // namespace serial

namespace parallel {

std::vector<double> standard_inversion(std::span<const double> t, const PhysParams& p, int n_max);
std::vector<double> modified_inversion(std::span<const double> t, std::span<const double> nbb, const PhysParams& p,
                                       int n_max);

} // namespace parallel

} // namespace dqed
