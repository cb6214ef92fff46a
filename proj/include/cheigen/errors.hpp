#pragma once

#include <stdexcept>
#include <string>

namespace cheigen {

/// Base class for every error this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Programming errors: violated call contracts.
class ModeMismatch : public Error {
public:
    explicit ModeMismatch(const std::string& msg) : Error(msg) {}
};
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};
class ZeroVector : public Error {
public:
    explicit ZeroVector(const std::string& msg) : Error(msg) {}
};
class ZeroMatrixError : public Error {
public:
    explicit ZeroMatrixError(const std::string& msg) : Error(msg) {}
};
class ClassMismatch : public Error {
public:
    explicit ClassMismatch(const std::string& msg) : Error(msg) {}
};
class InconsistentSpectrum : public Error {
public:
    explicit InconsistentSpectrum(const std::string& msg) : Error(msg) {}
};

// Domain errors: the input matrix is outside the supported spectra.
class IrrationalSpectrum : public Error {
public:
    explicit IrrationalSpectrum(const std::string& msg) : Error(msg) {}
};
class ComplexSpectrum : public Error {
public:
    explicit ComplexSpectrum(const std::string& msg) : Error(msg) {}
};
class NotNilpotent : public Error {
public:
    explicit NotNilpotent(const std::string& msg) : Error(msg) {}
};

// Input errors raised while reading documents.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

} // namespace cheigen
