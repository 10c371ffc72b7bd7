#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "landau/boundary_decay.hpp"
#include "landau/coefficient_bounds.hpp"
#include "landau/grid.hpp"
#include "landau/kernel_checks.hpp"
#include "landau/norms.hpp"
#include "landau/picard.hpp"
#include "landau/solver.hpp"
#include "landau/term_ledger.hpp"
#include "landau/weight_audit.hpp"

namespace landau {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t h);

struct Provenance {
    std::string config_hash;  // hex FNV-1a of the canonical config text
    GridSpec grid;
};

std::string library_version();
// Format version of every module that writes an artifact.
const std::map<std::string, std::string>& module_versions();

// Pretty-printed JSON with sorted keys and a "provenance" block. Non-finite numbers become null.
std::string report_json(const AuditReport& r, const Provenance& p);
std::string report_json(const BoundReport& r, const Provenance& p);
std::string report_json(const KernelCheckReport& r, const Provenance& p);
std::string report_json(const EnergyReport& r, const Provenance& p);
std::string report_json(const TermLedger& r, const Provenance& p);
std::string report_json(const ContractionHistory& h, const PicardParams& params, const Provenance& p);
std::string report_json(const BoundaryDecayReport& r, const Provenance& p);
std::string report_json(const SolveStats& s, const GronwallFit& fit, const Provenance& p);

// Header "t", "Y_<index>" per multi-index in lexicographic (alpha, beta) order, "X_total";
// one row per snapshot, CRLF line ends, numbers as %.17g.
std::string energy_csv(const EnergyReport& r);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
// RFC 4180 reader for numeric tables (quoted fields, doubled quotes, CRLF or LF).
CsvTable parse_csv(std::string_view text);

}  // namespace landau
