#pragma once

#include <json.hpp>

#include "pk/verify.hpp"

namespace pk {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' decimal, no separators.
std::string csv_number(double v);

std::string domain_to_string(const DomainSpec& domain);
std::string complex_to_string(Complex z);

Json domain_to_json(const DomainSpec& domain);
Json options_to_json(const VerifyOptions& opts);
Json check_to_json(const CheckResult& check);
Json report_to_json(const VerificationReport& report);
Json kernels_to_json(Complex w, const KernelValues& k);

}  // namespace pk
