#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrk/chain.hpp"
#include "lrk/kernel.hpp"

namespace lrk {

// One parameter sweep: the chain couplings are held fixed while N runs over
// N_values; each row evaluates the QFI of the selected channel.
struct SweepSpec {
    Channel channel = Channel::Delta;
    std::vector<int> N_values;
    DecayKernel kernel;
    double J = 1.0;
    double mu = 1.0;
    double delta = 1.0;
    double T = 1.0;
    bool controlled = false;
};

// Throws domain_error naming the offending field: N_values must be
// non-empty, even, >= 2, and strictly increasing; T must be >= 0; a custom
// kernel table must cover separations up to max(N_values) - 1.
void validate(const SweepSpec& spec);

// One computed sweep row. Serialized rows use the fixed CSV column order
// below; wall_time_ms is carried by the JSON form only (it is the one
// non-reproducible field, excluded from the deterministic CSV).
struct RunRecord {
    int N = 0;
    double alpha = 0.0;
    std::string kernel_label; // "power" / "log" / "table"
    Channel channel = Channel::Delta;
    double J = 0.0;
    double mu = 0.0;
    double delta = 0.0;
    double T = 0.0;
    bool controlled = false;
    double qfi = 0.0;
    std::optional<double> gamma; // Delta channel only
    long long wall_time_ms = 0;
};

inline constexpr std::string_view kCsvHeader =
    "N,alpha,kernel,channel,J,mu,delta,T,controlled,qfi,gamma";
inline constexpr std::string_view kRunRecordSchema = "lrk-run-record/1";

// Evaluates every N in input order. Rows are computed by a worker pool
// (size capped by the LRK_THREADS environment variable) but stored and
// serialized in input order, so output is identical for any worker count.
std::vector<RunRecord> run_sweep(const SweepSpec& spec);

// Scientific notation with 17 significant digits via std::to_chars:
// locale-independent and lossless under round-trip.
std::string format_double(double x);

// CSV: header plus one line per record, '\n' separated, trailing newline.
// The gamma cell is empty for channels without one.
std::string to_csv(const std::vector<RunRecord>& records);

// Reads back a to_csv file. Throws io_error when the file cannot be opened
// and domain_error (with the line number) on a header or cell mismatch.
// wall_time_ms is not in the CSV and comes back 0.
std::vector<RunRecord> parse_csv(const std::string& path);

// JSON document {"schema": "lrk-run-record/1", "records": [...]} with gamma
// null when absent.
std::string to_json(const std::vector<RunRecord>& records);

} // namespace lrk
