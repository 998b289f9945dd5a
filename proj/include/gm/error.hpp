#pragma once

#include <stdexcept>
#include <string>

namespace gm {

// Error kinds map onto process exit codes in the CLI: budget_exceeded -> 4,
// everything else -> 2.
enum class errc {
    invalid_input,
    unknown_id,
    unrepresentable_infinite_partition,
    precondition_failed,
    budget_exceeded,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace gm
