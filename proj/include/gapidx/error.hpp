#pragma once

#include <stdexcept>
#include <string>

namespace gapidx {

enum class errc {
    sentinel_in_input,
    empty_pattern,
    bad_range,
    duplicate_value,
    bad_tau,
    non_uniform_frequency,
    dummy_set_queried,
    format,
    io,
    unsupported,
};

inline const char* to_string(errc code) {
    switch (code) {
    case errc::sentinel_in_input: return "SentinelInInput";
    case errc::empty_pattern: return "EmptyPattern";
    case errc::bad_range: return "BadRange";
    case errc::duplicate_value: return "DuplicateValue";
    case errc::bad_tau: return "BadTau";
    case errc::non_uniform_frequency: return "NonUniformFrequency";
    case errc::dummy_set_queried: return "DummySetQueried";
    case errc::format: return "FormatError";
    case errc::io: return "IoError";
    case errc::unsupported: return "Unsupported";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    errc code() const noexcept { return code_; }
    /// The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    errc code_;
    std::string detail_;
};

}  // namespace gapidx
