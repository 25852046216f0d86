#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace planereg {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input geometry cannot support the requested operation
/// (collinear points for a plane fit, near-horizontal normal for a
/// vertical-plane frame, ...).
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

/// sigma_from_threshold called with alpha_thresh == mu.
class InvalidThreshold : public Error {
public:
    explicit InvalidThreshold(const std::string& msg) : Error(msg) {}
};

/// The 2x2 quadric system is too ill-conditioned to solve (near-parallel
/// plane normals). Callers fall back to the single-direction path.
class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& msg) : Error(msg) {}
};

/// Motion estimation could not observe some degrees of freedom and no
/// prior was available to fill them in.
class Underconstrained : public Error {
public:
    Underconstrained(const std::string& msg, std::vector<std::string> missing_dof)
        : Error(msg), missing(std::move(missing_dof)) {}
    std::vector<std::string> missing;
};

/// Malformed input file. `line` is 1-based for text formats, `byte_offset`
/// is set for binary formats; the unused one is negative.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line_no, long byte_off = -1)
        : Error(msg), line(line_no), byte_offset(byte_off) {}
    long line = -1;
    long byte_offset = -1;
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& msg) : Error(msg) {}
};

class NoHorizontalPlane : public Error {
public:
    explicit NoHorizontalPlane(const std::string& msg) : Error(msg) {}
};

class EmptyCorrespondences : public Error {
public:
    explicit EmptyCorrespondences(const std::string& msg) : Error(msg) {}
};

}  // namespace planereg
