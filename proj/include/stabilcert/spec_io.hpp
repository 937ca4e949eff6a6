#ifndef STABILCERT_SPEC_IO_HPP
#define STABILCERT_SPEC_IO_HPP

#include <string>

#include <json.hpp>

#include "stabilcert/certifier.hpp"
#include "stabilcert/operator_spec.hpp"
#include "stabilcert/symbol_oracle.hpp"

namespace stabilcert {

using Json = nlohmann::json;

/// Parse a UTF-8 JSON operator spec.  Rejects NaN/inf entries, non-rational
/// theta, period < 1, out-of-range dense indices; ParseError carries the
/// offending location.
OperatorSpec parse_operator_spec(const std::string& text);
OperatorSpec spec_from_json(const Json& j);

/// Normalized echo of a spec; parse(spec_to_json(s)) reproduces s.
Json spec_to_json(const OperatorSpec& spec);

Json certificate_to_json(const StabilityCertificate& cert);
StabilityCertificate certificate_from_json(const Json& j);

Json scan_to_json(const ScanTable& table);
Json symbol_analysis_to_json(const SymbolAnalysis& sa);

/// p as the report encodes it: "1", "2" or "inf".
std::string p_to_string(double p);
double p_from_string(const std::string& s);

/// One run's machine-readable result.
struct RunReport {
    int format = 1;
    std::string tool_version;
    std::string command;
    Json params = Json::object();
    Json spec_echo;          // null for paper-examples
    Json payload = Json::object();
    std::string verdict;
    double timing_ms = 0.0;

    bool operator==(const RunReport& o) const;
};

Json report_to_json(const RunReport& report);
RunReport report_from_json(const Json& j);

/// Deterministic serialization (sorted keys, two-space indent, trailing
/// newline); serialize -> parse -> serialize is byte-identical.
std::string dump_report(const RunReport& report);
RunReport parse_report(const std::string& text);

}  // namespace stabilcert

#endif  // STABILCERT_SPEC_IO_HPP
