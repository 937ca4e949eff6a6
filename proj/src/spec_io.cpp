#include "stabilcert/spec_io.hpp"

#include <cmath>
#include <limits>

#include "stabilcert/errors.hpp"
#include "stabilcert/version.hpp"

namespace stabilcert {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("spec error at " + where + ": " + what);
}

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "non-finite value");
    return v;
}

Complex scalar_at(const Json& j, const std::string& where) {
    if (j.is_number()) return Complex(number_at(j, where));
    if (j.is_array() && j.size() == 2)
        return Complex(number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]"));
    fail(where, "expected a number or an [re, im] pair");
}

long long integer_at(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::map<long long, Complex> coeffs_at(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object of offset -> coefficient");
    std::map<long long, Complex> coeffs;
    for (const auto& [key, value] : j.items()) {
        long long offset = 0;
        try {
            std::size_t used = 0;
            offset = std::stoll(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            fail(where + "." + key, "coefficient keys must be decimal integers");
        }
        coeffs[offset] = scalar_at(value, where + "." + key);
    }
    return coeffs;
}

Rational theta_at(const Json& j, const std::string& where) {
    if (!j.is_string())
        fail(where, "theta must be a rational written as \"r/q\"");
    const std::string s = j.get<std::string>();
    const std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const long long r = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Rational::reduced(r, 1);
        }
        std::size_t used_n = 0, used_d = 0;
        const long long num = std::stoll(s.substr(0, slash), &used_n);
        const long long den = std::stoll(s.substr(slash + 1), &used_d);
        if (used_n != slash || used_d != s.size() - slash - 1) throw std::invalid_argument(s);
        return Rational::reduced(num, den);
    } catch (const InputError& e) {
        fail(where, e.what());
    } catch (const std::exception&) {
        fail(where, "theta must be a rational written as \"r/q\"");
    }
}

std::vector<double> points_at(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of coordinates");
    std::vector<double> pts;
    pts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        pts.push_back(number_at(j[i], where + "[" + std::to_string(i) + "]"));
    return pts;
}

Json scalar_to_json(const Complex& v) {
    if (v.imag() == 0.0) return Json(v.real());
    return Json::array({v.real(), v.imag()});
}

}  // namespace

OperatorSpec spec_from_json(const Json& j) {
    if (!j.is_object()) fail("$", "spec must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) fail("$.kind", "missing or non-string");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "toeplitz") {
            if (!j.contains("coeffs")) fail("$.coeffs", "missing");
            return OperatorSpec::toeplitz(coeffs_at(j["coeffs"], "$.coeffs"));
        }
        if (kind == "twisted") {
            if (!j.contains("coeffs")) fail("$.coeffs", "missing");
            if (!j.contains("theta")) fail("$.theta", "missing");
            return OperatorSpec::twisted_toeplitz(coeffs_at(j["coeffs"], "$.coeffs"),
                                                  theta_at(j["theta"], "$.theta"));
        }
        if (kind == "periodic") {
            if (!j.contains("coeffs")) fail("$.coeffs", "missing");
            if (!j.contains("modulation") || !j["modulation"].is_array())
                fail("$.modulation", "missing or not an array");
            std::vector<Complex> mod;
            for (std::size_t i = 0; i < j["modulation"].size(); ++i)
                mod.push_back(scalar_at(j["modulation"][i],
                                        "$.modulation[" + std::to_string(i) + "]"));
            if (j.contains("period")) {
                const long long q = integer_at(j["period"], "$.period");
                if (q < 1) fail("$.period", "period must be >= 1");
                if (q != static_cast<long long>(mod.size()))
                    fail("$.period", "period must equal the modulation length");
            }
            return OperatorSpec::periodic_modulated(coeffs_at(j["coeffs"], "$.coeffs"),
                                                    std::move(mod));
        }
        if (kind == "dense") {
            if (!j.contains("points_rows")) fail("$.points_rows", "missing");
            if (!j.contains("points_cols")) fail("$.points_cols", "missing");
            if (!j.contains("entries") || !j["entries"].is_array())
                fail("$.entries", "missing or not an array");
            const IndexSet rows = IndexSet::from_reals(points_at(j["points_rows"], "$.points_rows"));
            const IndexSet cols = IndexSet::from_reals(points_at(j["points_cols"], "$.points_cols"));
            std::vector<DenseEntry> entries;
            for (std::size_t i = 0; i < j["entries"].size(); ++i) {
                const std::string where = "$.entries[" + std::to_string(i) + "]";
                const Json& e = j["entries"][i];
                if (!e.is_array() || e.size() != 3)
                    fail(where, "expected [row_index, col_index, value]");
                const long long r = integer_at(e[0], where + "[0]");
                const long long c = integer_at(e[1], where + "[1]");
                if (r < 0 || c < 0) fail(where, "negative position index");
                entries.push_back(DenseEntry{static_cast<std::size_t>(r),
                                             static_cast<std::size_t>(c),
                                             scalar_at(e[2], where + "[2]")});
            }
            return OperatorSpec::dense_window(rows, cols, std::move(entries));
        }
    } catch (const InputError& e) {
        fail("$", e.what());
    }
    fail("$.kind", "unknown kind \"" + kind + "\" (expected toeplitz|twisted|periodic|dense)");
}

OperatorSpec parse_operator_spec(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return spec_from_json(j);
}

Json spec_to_json(const OperatorSpec& spec) {
    Json j = Json::object();
    switch (spec.kind()) {
        case SpecKind::kToeplitz:
        case SpecKind::kTwistedToeplitz:
        case SpecKind::kPeriodicModulated: {
            Json coeffs = Json::object();
            for (const auto& [k, v] : spec.coeffs()) coeffs[std::to_string(k)] = scalar_to_json(v);
            j["coeffs"] = std::move(coeffs);
            if (spec.kind() == SpecKind::kToeplitz) {
                j["kind"] = "toeplitz";
            } else if (spec.kind() == SpecKind::kTwistedToeplitz) {
                j["kind"] = "twisted";
                j["theta"] = std::to_string(spec.theta().num) + "/" + std::to_string(spec.theta().den);
            } else {
                j["kind"] = "periodic";
                j["period"] = spec.period();
                Json mod = Json::array();
                for (const Complex& m : spec.modulation()) mod.push_back(scalar_to_json(m));
                j["modulation"] = std::move(mod);
            }
            break;
        }
        case SpecKind::kDenseWindow: {
            j["kind"] = "dense";
            Json rows = Json::array(), cols = Json::array(), entries = Json::array();
            for (const Point& p : spec.dense_rows().points()) rows.push_back(p[0]);
            for (const Point& p : spec.dense_cols().points()) cols.push_back(p[0]);
            for (const DenseEntry& e : spec.dense_entries())
                entries.push_back(Json::array(
                    {static_cast<long long>(e.row), static_cast<long long>(e.col),
                     scalar_to_json(e.value)}));
            j["points_rows"] = std::move(rows);
            j["points_cols"] = std::move(cols);
            j["entries"] = std::move(entries);
            break;
        }
    }
    return j;
}

std::string p_to_string(double p) {
    if (std::isinf(p)) return "inf";
    if (p == 1.0) return "1";
    if (p == 2.0) return "2";
    return std::to_string(p);
}

double p_from_string(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return std::numeric_limits<double>::infinity();
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ParseError("invalid p value \"" + s + "\" (expected 1, 2 or inf)");
    }
}

namespace {

Json witness_to_json(const std::vector<Complex>& w) {
    Json arr = Json::array();
    for (const Complex& v : w) {
        if (v.imag() == 0.0)
            arr.push_back(v.real());
        else
            arr.push_back(Json::array({v.real(), v.imag()}));
    }
    return arr;
}

std::vector<Complex> witness_from_json(const Json& j) {
    std::vector<Complex> w;
    for (const Json& v : j) {
        if (v.is_number())
            w.emplace_back(v.get<double>());
        else
            w.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return w;
}

BoundMethod method_from_string(const std::string& s) {
    if (s == "svd") return BoundMethod::kSvd;
    if (s == "lp_inf") return BoundMethod::kLpInf;
    if (s == "lp_one") return BoundMethod::kLpOne;
    if (s == "vertex_one") return BoundMethod::kVertexOne;
    if (s == "brute") return BoundMethod::kBrute;
    throw ParseError("unknown bound method \"" + s + "\"");
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "CertifiedStable") return Verdict::kCertifiedStable;
    if (s == "NotCertified") return Verdict::kNotCertified;
    if (s == "CertifiedUnstable") return Verdict::kCertifiedUnstable;
    if (s == "Vacuous") return Verdict::kVacuous;
    throw ParseError("unknown verdict \"" + s + "\"");
}

}  // namespace

Json certificate_to_json(const StabilityCertificate& cert) {
    Json j = Json::object();
    j["p"] = p_to_string(cert.p);
    j["n0"] = cert.n0;
    j["alpha"] = cert.alpha;
    j["kappa"] = cert.kappa;
    j["r_rows"] = cert.r_rows;
    j["r_cols"] = cert.r_cols;
    j["trunc_inf"] = cert.trunc_inf;
    j["trunc_argmin"] = cert.trunc_argmin;
    j["threshold"] = cert.threshold;
    j["c1_lower"] = cert.c1_lower;
    j["c2_upper"] = cert.c2_upper;
    j["verdict"] = to_string(cert.verdict);
    if (cert.dd_margin) j["dd_margin"] = *cert.dd_margin;
    j["note"] = cert.note;
    Json blocks = Json::array();
    for (const BlockBoundReport& b : cert.blocks) {
        Json jb = Json::object();
        jb["center"] = b.center[0];
        jb["half_width"] = b.half_width;
        jb["p"] = p_to_string(b.p);
        jb["lower_bound"] = b.lower_bound;
        jb["method"] = to_string(b.method);
        jb["witness"] = witness_to_json(b.witness);
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

StabilityCertificate certificate_from_json(const Json& j) {
    StabilityCertificate cert;
    cert.p = p_from_string(j.at("p").get<std::string>());
    cert.n0 = j.at("n0").get<long long>();
    cert.alpha = j.at("alpha").get<double>();
    cert.kappa = j.at("kappa").get<double>();
    cert.r_rows = j.at("r_rows").get<double>();
    cert.r_cols = j.at("r_cols").get<double>();
    cert.trunc_inf = j.at("trunc_inf").get<double>();
    cert.trunc_argmin = j.at("trunc_argmin").get<long long>();
    cert.threshold = j.at("threshold").get<double>();
    cert.c1_lower = j.at("c1_lower").get<double>();
    cert.c2_upper = j.at("c2_upper").get<double>();
    cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("dd_margin")) cert.dd_margin = j["dd_margin"].get<double>();
    cert.note = j.at("note").get<std::string>();
    for (const Json& jb : j.at("blocks")) {
        BlockBoundReport b;
        b.center = Point(jb.at("center").get<double>());
        b.half_width = jb.at("half_width").get<long long>();
        b.p = p_from_string(jb.at("p").get<std::string>());
        b.lower_bound = jb.at("lower_bound").get<double>();
        b.method = method_from_string(jb.at("method").get<std::string>());
        b.witness = witness_from_json(jb.at("witness"));
        cert.blocks.push_back(std::move(b));
    }
    return cert;
}

Json scan_to_json(const ScanTable& table) {
    Json rows = Json::array();
    for (const ScanRow& r : table.rows) {
        Json jr = Json::object();
        jr["n"] = r.n;
        jr["alpha"] = r.alpha;
        jr["threshold"] = r.threshold;
        jr["certified"] = r.certified;
        rows.push_back(std::move(jr));
    }
    Json j = Json::object();
    j["rows"] = std::move(rows);
    return j;
}

Json symbol_analysis_to_json(const SymbolAnalysis& sa) {
    Json j = Json::object();
    switch (sa.verdict) {
        case SymbolAnalysis::Verdict::kCertifiedStable: j["verdict"] = "CertifiedStable"; break;
        case SymbolAnalysis::Verdict::kZeroFound: j["verdict"] = "ZeroFound"; break;
        case SymbolAnalysis::Verdict::kInconclusive: j["verdict"] = "Inconclusive"; break;
    }
    j["min_modulus_lower_bound"] = sa.min_modulus_lower_bound;
    j["lipschitz_const"] = sa.lipschitz_const;
    j["grid_step"] = sa.grid_step;
    j["smallest_observed"] = sa.smallest_observed;
    if (sa.zero_witness) {
        j["zero_xi"] = sa.zero_witness->first;
        j["zero_modulus"] = sa.zero_witness->second;
    }
    return j;
}

bool RunReport::operator==(const RunReport& o) const {
    return format == o.format && tool_version == o.tool_version && command == o.command &&
           params == o.params && spec_echo == o.spec_echo && payload == o.payload &&
           verdict == o.verdict && timing_ms == o.timing_ms;
}

Json report_to_json(const RunReport& report) {
    Json j = Json::object();
    j["format"] = report.format;
    j["tool_version"] = report.tool_version;
    j["command"] = report.command;
    j["params"] = report.params;
    j["spec"] = report.spec_echo;
    j["payload"] = report.payload;
    j["verdict"] = report.verdict;
    j["timing_ms"] = report.timing_ms;
    return j;
}

RunReport report_from_json(const Json& j) {
    RunReport r;
    r.format = j.at("format").get<int>();
    if (r.format != kReportFormat)
        throw ParseError("unsupported report format " + std::to_string(r.format));
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.spec_echo = j.at("spec");
    r.payload = j.at("payload");
    r.verdict = j.at("verdict").get<std::string>();
    r.timing_ms = j.at("timing_ms").get<double>();
    return r;
}

std::string dump_report(const RunReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed report JSON: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace stabilcert
