#pragma once

#include <stdexcept>
#include <string>

namespace rspolar {

/// Invalid parameters: bad field polynomial, infeasible code or puncturing setup.
class ConfigError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (inverse of zero, index out of range).
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

/// Numerical breakdown: zero probability mass, vanishing mutual information.
class NumericError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// File or parse failures; the message carries the path.
class IoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

} // namespace rspolar
