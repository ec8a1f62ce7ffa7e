#include "qsd/report.hpp"

#include <cmath>
#include <cstdio>

namespace qsd {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::closed_form:
            return "closed_form";
        case Provenance::quadrature:
            return "quadrature";
        case Provenance::identity:
            return "identity";
    }
    return "unknown";
}

CheckEntry make_check(std::string name, double residual, double tolerance) {
    return {std::move(name), residual < tolerance, residual, tolerance};
}

bool EvalReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) {
            out_ += ',';
        }
        first_.back() = false;
    }
}

void JsonWriter::begin_object() {
    separate();
    out_ += '{';
    first_.push_back(true);
}

void JsonWriter::end_object() {
    first_.pop_back();
    out_ += '}';
}

void JsonWriter::begin_array() {
    separate();
    out_ += '[';
    first_.push_back(true);
}

void JsonWriter::end_array() {
    first_.pop_back();
    out_ += ']';
}

void JsonWriter::key(std::string_view k) {
    separate();
    write_string(k);
    out_ += ':';
    after_key_ = true;
}

void JsonWriter::value(double v) {
    separate();
    out_ += format_number(v);
}

void JsonWriter::value(std::string_view v) {
    separate();
    write_string(v);
}

void JsonWriter::write_string(std::string_view v) {
    out_ += '"';
    for (char c : v) {
        switch (c) {
            case '"':
                out_ += "\\\"";
                break;
            case '\\':
                out_ += "\\\\";
                break;
            case '\n':
                out_ += "\\n";
                break;
            case '\t':
                out_ += "\\t";
                break;
            case '\r':
                out_ += "\\r";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
        }
    }
    out_ += '"';
}

void JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
}

void JsonWriter::null() {
    separate();
    out_ += "null";
}

std::string EvalReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version");
    w.value(schema_version);
    w.key("command");
    w.value(command);
    w.key("inputs");
    w.begin_object();
    for (const auto& [name, v] : inputs) {
        w.key(name);
        if (const auto* d = std::get_if<double>(&v)) {
            w.value(*d);
        } else if (const auto* list = std::get_if<std::vector<double>>(&v)) {
            w.begin_array();
            for (double x : *list) {
                w.value(x);
            }
            w.end_array();
        } else {
            w.value(std::get<std::string>(v));
        }
    }
    w.end_object();
    w.key("results");
    w.begin_array();
    for (const auto& r : results) {
        w.begin_object();
        w.key("name");
        w.value(r.name);
        w.key("value");
        w.value(r.value);
        w.key("provenance");
        w.value(provenance_name(r.provenance));
        if (!r.method.empty()) {
            w.key("method");
            w.value(r.method);
        }
        w.end_object();
    }
    w.end_array();
    w.key("checks");
    w.begin_array();
    for (const auto& c : checks) {
        w.begin_object();
        w.key("name");
        w.value(c.name);
        w.key("pass");
        w.value(c.pass);
        w.key("residual");
        w.value(c.residual);
        w.key("tolerance");
        w.value(c.tolerance);
        w.end_object();
    }
    w.end_array();
    w.key("all_pass");
    w.value(all_pass());
    w.end_object();
    return w.str();
}

std::string csv_field(std::string_view v) {
    if (v.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(v);
    }
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace qsd
