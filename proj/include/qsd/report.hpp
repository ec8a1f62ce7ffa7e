#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qsd {

inline constexpr const char* schema_version = "1.0.0";

enum class Provenance { closed_form, quadrature, identity };

const char* provenance_name(Provenance p);

struct ResultEntry {
    std::string name;
    double value = 0.0;
    Provenance provenance = Provenance::closed_form;
    std::string method;  // omitted from output when empty
};

struct CheckEntry {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

/// Marks a check from residual < tolerance; NaN residuals fail.
CheckEntry make_check(std::string name, double residual, double tolerance);

using InputValue = std::variant<double, std::vector<double>, std::string>;

struct EvalReport {
    std::string command;
    std::vector<std::pair<std::string, InputValue>> inputs;
    std::vector<ResultEntry> results;
    std::vector<CheckEntry> checks;

    bool all_pass() const;
    /// One JSON object, fields in a fixed order, numbers as %.17g.
    std::string to_json() const;
};

/// %.17g; "null" for non-finite values.
std::string format_number(double v);

/// Minimal streaming JSON writer that keeps insertion order.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view k);
    void value(double v);
    void value(std::string_view v);
    void value(const char* v) { value(std::string_view(v)); }
    void value(bool v);
    void null();

    const std::string& str() const { return out_; }

private:
    void separate();
    void write_string(std::string_view v);

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(std::string_view v);

}  // namespace qsd
