#include "lrk/sweep.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lrk/errors.hpp"
#include "lrk/qfi.hpp"

namespace lrk {

namespace {

// Worker cap: LRK_THREADS when set to a positive integer, hardware
// concurrency otherwise.
unsigned worker_limit() {
    if (const char* env = std::getenv("LRK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

RunRecord evaluate_row(const SweepSpec& spec, int N) {
    ChainParams p;
    p.J = spec.J;
    p.mu = spec.mu;
    p.delta = spec.delta;
    p.N = N;
    p.kernel = spec.kernel;
    const ProbeSpec probe{spec.channel, spec.T};

    const auto start = std::chrono::steady_clock::now();
    const QfiResult q =
        spec.controlled ? qfi_optimal(p, probe) : qfi_uncontrolled(p, probe);
    const auto stop = std::chrono::steady_clock::now();

    RunRecord r;
    r.N = N;
    r.alpha = spec.kernel.alpha;
    r.kernel_label = std::string(spec.kernel.label());
    r.channel = spec.channel;
    r.J = spec.J;
    r.mu = spec.mu;
    r.delta = spec.delta;
    r.T = spec.T;
    r.controlled = spec.controlled;
    r.qfi = q.value;
    r.gamma = q.gamma;
    r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         stop - start)
                         .count();
    return r;
}

double parse_cell_double(const std::string& cell, std::size_t line) {
    double v = 0.0;
    const auto res =
        std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw domain_error("parse_csv: bad numeric cell '" + cell +
                           "' on line " + std::to_string(line));
    return v;
}

} // namespace

void validate(const SweepSpec& spec) {
    if (spec.N_values.empty())
        throw domain_error("sweep: N_values must be non-empty");
    int prev = 0;
    for (int n : spec.N_values) {
        if (n < 2 || n % 2 != 0)
            throw domain_error(
                "sweep: N_values must contain even integers >= 2 (got " +
                std::to_string(n) + ")");
        if (n <= prev)
            throw domain_error("sweep: N_values must be strictly increasing");
        prev = n;
    }
    if (!(spec.T >= 0.0))
        throw domain_error("sweep: T must be >= 0");
    if (spec.kernel.kind == KernelKind::CustomTable &&
        static_cast<int>(spec.kernel.table.size()) < spec.N_values.back() - 1)
        throw domain_error(
            "sweep: custom kernel table must cover separations up to "
            "max(N_values) - 1 = " +
            std::to_string(spec.N_values.back() - 1));
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec) {
    validate(spec);
    const std::size_t n_rows = spec.N_values.size();
    std::vector<RunRecord> records(n_rows);

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_limit(), n_rows));
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_rows) return;
            try {
                records[i] = evaluate_row(spec, spec.N_values[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x,
                                   std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<RunRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const RunRecord& r : records) {
        out += std::to_string(r.N);
        out += ',';
        out += format_double(r.alpha);
        out += ',';
        out += r.kernel_label;
        out += ',';
        out += channel_label(r.channel);
        out += ',';
        out += format_double(r.J);
        out += ',';
        out += format_double(r.mu);
        out += ',';
        out += format_double(r.delta);
        out += ',';
        out += format_double(r.T);
        out += ',';
        out += r.controlled ? "true" : "false";
        out += ',';
        out += format_double(r.qfi);
        out += ',';
        if (r.gamma) out += format_double(*r.gamma);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("parse_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw domain_error("parse_csv: empty file '" + path + "'");
    if (line != kCsvHeader)
        throw domain_error("parse_csv: header mismatch in '" + path +
                           "' (expected '" + std::string(kCsvHeader) + "')");

    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back(); // trailing empty gamma
        if (cells.size() != 11)
            throw domain_error("parse_csv: expected 11 cells on line " +
                               std::to_string(line_no) + ", got " +
                               std::to_string(cells.size()));
        RunRecord r;
        r.N = static_cast<int>(parse_cell_double(cells[0], line_no));
        r.alpha = parse_cell_double(cells[1], line_no);
        r.kernel_label = cells[2];
        try {
            r.channel = parse_channel(cells[3]);
        } catch (const domain_error&) {
            throw domain_error("parse_csv: bad channel '" + cells[3] +
                               "' on line " + std::to_string(line_no));
        }
        r.J = parse_cell_double(cells[4], line_no);
        r.mu = parse_cell_double(cells[5], line_no);
        r.delta = parse_cell_double(cells[6], line_no);
        r.T = parse_cell_double(cells[7], line_no);
        if (cells[8] == "true")
            r.controlled = true;
        else if (cells[8] == "false")
            r.controlled = false;
        else
            throw domain_error("parse_csv: bad controlled cell '" + cells[8] +
                               "' on line " + std::to_string(line_no));
        r.qfi = parse_cell_double(cells[9], line_no);
        if (!cells[10].empty())
            r.gamma = parse_cell_double(cells[10], line_no);
        records.push_back(std::move(r));
    }
    return records;
}

std::string to_json(const std::vector<RunRecord>& records) {
    nlohmann::ordered_json doc;
    doc["schema"] = std::string(kRunRecordSchema);
    doc["records"] = nlohmann::ordered_json::array();
    for (const RunRecord& r : records) {
        nlohmann::ordered_json row;
        row["N"] = r.N;
        row["alpha"] = r.alpha;
        row["kernel"] = r.kernel_label;
        row["channel"] = std::string(channel_label(r.channel));
        row["J"] = r.J;
        row["mu"] = r.mu;
        row["delta"] = r.delta;
        row["T"] = r.T;
        row["controlled"] = r.controlled;
        row["qfi"] = r.qfi;
        if (r.gamma)
            row["gamma"] = *r.gamma;
        else
            row["gamma"] = nullptr;
        row["wall_time_ms"] = r.wall_time_ms;
        doc["records"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

} // namespace lrk
