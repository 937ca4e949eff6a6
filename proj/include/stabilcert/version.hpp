#ifndef STABILCERT_VERSION_HPP
#define STABILCERT_VERSION_HPP

namespace stabilcert {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormat = 1;

}  // namespace stabilcert

#endif  // STABILCERT_VERSION_HPP
