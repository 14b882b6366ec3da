#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace herminertia {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MixedField : public Error {
public:
    MixedField() : Error("arithmetic between elements of different fields") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

class NonRealDiagonal : public Error {
public:
    explicit NonRealDiagonal(std::size_t index)
        : Error("diagonal entry " + std::to_string(index) + " is not real"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class NotHermitian : public Error {
public:
    NotHermitian(std::size_t row, std::size_t col)
        : Error("entries (" + std::to_string(row) + "," + std::to_string(col) +
                ") and its transpose are not conjugate"),
          row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_, col_;
};

class EmptySelection : public Error {
public:
    EmptySelection() : Error("principal submatrix selection is empty") {}
};

class BadIndex : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(std::size_t pivot)
        : Error("matrix is not positive definite: pivot " + std::to_string(pivot) + " fails"),
          pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class NotGeneralizedLaplacian : public Error {
public:
    explicit NotGeneralizedLaplacian(std::size_t row)
        : Error("row " + std::to_string(row) + " violates diagonal dominance"), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class IncompatibleOperator : public Error {
public:
    using Error::Error;
};

class UnexpectedDifferenceShape : public Error {
public:
    using Error::Error;
};

class MethodDisagreement : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class GapUnreachable : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Carries the position of the offending token.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::string token, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what + " near '" + token + "'"),
          file_(std::move(file)), line_(line), token_(std::move(token)) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::string file_;
    std::size_t line_;
    std::string token_;
};

}  // namespace herminertia
