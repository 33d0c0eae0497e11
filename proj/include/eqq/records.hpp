// Machine-readable result records: one flat schema, emitted as CSV or JSON
// with deterministic field order and locale-independent number formatting.
#pragma once

#include <map>
#include <span>
#include <string>

#include "eqq/types.hpp"

namespace eqq {

// Shortest round-trip representation, independent of the global locale.
std::string format_double(double v);

struct OutputRecord {
    std::string experiment;
    std::map<std::string, std::string> inputs; // echoed configuration, formatted
    std::map<std::string, std::string> outputs;

    void put_input(const std::string& name, double v) { inputs[name] = format_double(v); }
    void put_input(const std::string& name, long v) { inputs[name] = std::to_string(v); }
    void put_input(const std::string& name, const std::string& v) { inputs[name] = v; }
    void put(const std::string& name, double v) { outputs[name] = format_double(v); }
    void put(const std::string& name, long v) { outputs[name] = std::to_string(v); }
    void put(const std::string& name, cplx v) {
        outputs[name + "_re"] = format_double(v.real());
        outputs[name + "_im"] = format_double(v.imag());
    }
};

// Header: experiment, inputs alphabetically, outputs alphabetically (union
// over records, blank cells where a record lacks a column).
std::string to_csv(std::span<const OutputRecord> records);

// Array of objects mirroring the CSV fields one-to-one.
std::string to_json(std::span<const OutputRecord> records);

} // namespace eqq
