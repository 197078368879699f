#pragma once

#include <stdexcept>
#include <string>

namespace nss {

// Error classes map 1:1 onto CLI exit codes: 1 usage, 2 parse, 3 numeric.
enum class ErrorClass { Usage = 1, Parse = 2, Numeric = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& msg) : std::runtime_error(msg), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct EmptyClass : Error {
    explicit EmptyClass(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct BadDimension : Error {
    explicit BadDimension(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct InfeasibleFolds : Error {
    explicit InfeasibleFolds(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct SingularCovariance : Error {
    explicit SingularCovariance(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct AngleInfeasible : Error {
    explicit AngleInfeasible(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct WrongMode : Error {
    explicit WrongMode(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct UnsupportedFamily : Error {
    explicit UnsupportedFamily(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& msg) : Error(ErrorClass::Numeric, msg) {}
};

// Parse errors carry a 1-based file position when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0, long column = 0)
        : Error(ErrorClass::Parse, format(msg, line, column)), line_(line), column_(column) {}
    long line() const noexcept { return line_; }
    long column() const noexcept { return column_; }

private:
    static std::string format(const std::string& msg, long line, long column) {
        std::string out = msg;
        if (line > 0) {
            out += " (line " + std::to_string(line);
            if (column > 0) out += ", column " + std::to_string(column);
            out += ")";
        }
        return out;
    }
    long line_;
    long column_;
};

struct RaggedRows : ParseError {
    RaggedRows(const std::string& msg, long line = 0) : ParseError(msg, line) {}
};

struct NonAscendingIndex : ParseError {
    NonAscendingIndex(const std::string& msg, long line = 0, long column = 0)
        : ParseError(msg, line, column) {}
};

}  // namespace nss
