#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umgen {

/// Requested allocation exceeds a configured memory/size budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& message, std::string path)
        : std::runtime_error(message + ": " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transform descriptor outside the declared monotone family.
class UnsupportedTransformError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A triangle with a non-positive side; the offending pair is carried along.
class DegenerateTriangleError : public std::runtime_error {
public:
    DegenerateTriangleError(const std::string& message, std::size_t a, std::size_t b)
        : std::runtime_error(message), a_(a), b_(b) {}

    std::size_t point_a() const noexcept { return a_; }
    std::size_t point_b() const noexcept { return b_; }

private:
    std::size_t a_;
    std::size_t b_;
};

/// Input matrix failed the strong triangle check; carries the worst violation.
class NotUltrametricError : public std::runtime_error {
public:
    NotUltrametricError(const std::string& message, std::size_t a, std::size_t b,
                        std::size_t c, double excess)
        : std::runtime_error(message), a_(a), b_(b), c_(c), excess_(excess) {}

    std::size_t point_a() const noexcept { return a_; }
    std::size_t point_b() const noexcept { return b_; }
    std::size_t point_c() const noexcept { return c_; }
    double excess() const noexcept { return excess_; }

private:
    std::size_t a_;
    std::size_t b_;
    std::size_t c_;
    double excess_;
};

}  // namespace umgen
