#ifndef DDL_TYPES_HPP
#define DDL_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace ddl
{

/// Integer power (kW) or energy (kW-slots) quantity.
using Count = std::int64_t;

/// Non-negative integer vector indexed by slot.
using IntVector = std::vector<Count>;

/// Integer power available per slot. Also used for renewable realizations and purchases.
using SupplyProfile = IntVector;

/// Exact rational used for prices, utilities, probabilities and costs.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q)
{
    if (q.denominator() == 1)
        return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline double to_double(const Rational& q)
{
    return boost::rational_cast<double>(q);
}

} // namespace ddl

#endif // DDL_TYPES_HPP
