#pragma once

#include "chipfire/error.hpp"
#include "chipfire/integer.hpp"
#include "chipfire/reach.hpp"

#include <string>

namespace chipfire::detail {

inline void check_composition_budget(std::size_t n, const Integer& total, const ResourceLimits& limits)
{
    if (total < 0) throw DomainError("total chip count must be nonnegative");
    if (!total.fits_ulong_p()) {
        throw ResourceExceeded("total " + total.get_str() + " is too large to enumerate");
    }
    const Integer count = binomial(total.get_ui() + n - 1, n - 1);
    if (count > Integer(static_cast<unsigned long>(limits.max_configurations))) {
        throw ResourceExceeded("enumerating " + count.get_str() + " configurations exceeds the limit of " +
                               std::to_string(limits.max_configurations));
    }
}

}  // namespace chipfire::detail
