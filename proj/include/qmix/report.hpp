#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmix/certificates.hpp"
#include "qmix/periodicity.hpp"
#include "qmix/search.hpp"
#include "qmix/spectral.hpp"

namespace qmix {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
const char* version();

// Rounds to 15 significant digits so that output is stable across platforms.
double round15(double x);

Json to_json(const Tolerances& t);
Json graph_summary(const Graph& g);
Json to_json(const SpectralDecomposition& dec, const SpectrumClassification& cls);
Json to_json(const CertificateVerdict& v);
Json to_json(const CertificateReport& r, bool include_paper_tier);
Json to_json(const MixingReport& r);
Json to_json(const PeriodicityResult& p);
Json to_json(const RealTargetPeriod& p);

CertificateVerdict verdict_from_json(const Json& j);

// Skeleton shared by every command: schema, tool, version and tolerances.
Json report_header(const Tolerances& t);

// "t,delta" rows with '.' as decimal separator regardless of locale.
void write_profile_csv(std::ostream& os, std::span<const double> times, std::span<const double> values);

}  // namespace qmix
