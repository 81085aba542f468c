#pragma once

#include <cstdint>

#include "dualrec/errors.hpp"

namespace dualrec {

// Node-count cap for the exponential searches. Exhausting the budget raises
// SearchBudgetExceeded, which is reported distinctly from a negative result.
class SearchBudget {
public:
    explicit SearchBudget(std::uint64_t cap = 10'000'000) : cap_(cap) {}

    void tick(const char* where) {
        if (++used_ > cap_) fail("SearchBudgetExceeded", where);
    }

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

} // namespace dualrec
