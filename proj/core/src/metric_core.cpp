#include "geofix/metric_core.hpp"

namespace geofix {

template class BasicFiniteSample<double>;
template class BasicFiniteSample<Rational>;
template FourPointResult<double> four_point_delta(const FiniteSample&, const HyperbolicityOptions&);
template FourPointResult<Rational> four_point_delta(const ExactSample&,
                                                    const HyperbolicityOptions&);
template double basepoint_delta(const FiniteSample&, std::size_t, const HyperbolicityOptions&);
template Rational basepoint_delta(const ExactSample&, std::size_t, const HyperbolicityOptions&);

}  // namespace geofix
