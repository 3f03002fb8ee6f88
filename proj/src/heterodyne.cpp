#include "ionphase/heterodyne.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace ionphase {

namespace {

constexpr double pi = std::numbers::pi;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open for reading: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open for writing: " + path);
    return out;
}

} // namespace

void HeterodyneConfig::validate() const {
    if (!(trigger_frequency > 0.0))
        throw config_error("trigger frequency must be positive");
    if (!(beat_frequency > 0.0))
        throw config_error("beat frequency must be positive");
    if (!(bin_width > 0.0)) throw config_error("bin width must be positive");
    if (!(duration > 0.0)) throw config_error("duration must be positive");
    if (mean_rate < 0.0) throw config_error("mean rate must be >= 0");
    if (background_rate < 0.0)
        throw config_error("background rate must be >= 0");
    if (visibility < 0.0 || visibility > 1.0)
        throw config_error("visibility must lie in [0, 1]");

    const double cycles = beat_frequency / (2.0 * pi * trigger_frequency);
    if (std::abs(cycles - std::round(cycles)) > 1e-9 * cycles)
        throw config_error(
            "beat frequency must be an integer multiple of the trigger "
            "frequency");
    const double bins = trigger_period() / bin_width;
    if (std::abs(bins - std::round(bins)) > 1e-9 * bins)
        throw config_error("bin width must divide the trigger period exactly");
}

std::size_t HeterodyneConfig::bin_count() const {
    return static_cast<std::size_t>(std::round(trigger_period() / bin_width));
}

long HeterodyneConfig::oscillations_per_period() const {
    return std::lround(beat_frequency / (2.0 * pi * trigger_frequency));
}

double beat_rate(double t, const HeterodyneConfig& config, double phase) {
    return config.mean_rate *
               (1.0 + config.visibility *
                          std::cos(config.beat_frequency * t + phase)) +
           config.background_rate;
}

DetectionRecord sample_detections(const HeterodyneConfig& config, double phase,
                                  std::uint64_t seed) {
    config.validate();
    DetectionRecord record;
    const double envelope =
        config.mean_rate * (1.0 + config.visibility) + config.background_rate;
    if (envelope <= 0.0) return record;

    record.arrival_times.reserve(
        static_cast<std::size_t>(config.mean_rate * config.duration * 1.05) +
        64);

    std::mt19937_64 rng(seed);
    const double inv_max =
        1.0 / (static_cast<double>(rng.max()) + 1.0);
    const auto uniform = [&] { return static_cast<double>(rng()) * inv_max; };

    double t = 0.0;
    for (;;) {
        t += -std::log1p(-uniform()) / envelope;
        if (t >= config.duration) break;
        if (uniform() * envelope <= beat_rate(t, config, phase))
            record.arrival_times.push_back(t);
    }
    return record;
}

TdcHistogram fold_histogram(const DetectionRecord& record,
                            const HeterodyneConfig& config) {
    config.validate();
    const std::size_t nbins = config.bin_count();
    const double period = config.trigger_period();

    TdcHistogram hist;
    hist.counts.assign(nbins, 0);
    hist.bin_edges.resize(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i)
        hist.bin_edges[i] = static_cast<double>(i) * config.bin_width;

    for (double t : record.arrival_times) {
        const double folded = std::fmod(t, period);
        auto idx = static_cast<std::size_t>(folded / config.bin_width);
        if (idx >= nbins) idx = nbins - 1; // fp edge at the period boundary
        ++hist.counts[idx];
    }
    hist.total = record.arrival_times.size();
    return hist;
}

void DetectionRecord::save(std::ostream& out) const {
    out.precision(12);
    for (double t : arrival_times) out << t << '\n';
}

void DetectionRecord::save(const std::string& path) const {
    auto out = open_output(path);
    save(out);
}

DetectionRecord DetectionRecord::load(std::istream& in) {
    DetectionRecord record;
    std::string line;
    double previous = -1.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        const double t = std::stod(line, &pos);
        if (pos != line.size())
            throw config_error("malformed arrival time: " + line);
        if (t <= previous)
            throw config_error("arrival times must be strictly increasing");
        previous = t;
        record.arrival_times.push_back(t);
    }
    return record;
}

DetectionRecord DetectionRecord::load(const std::string& path) {
    auto in = open_input(path);
    return load(in);
}

void TdcHistogram::save_csv(std::ostream& out) const {
    out << "bin_start_s,count\n";
    out.precision(12);
    for (std::size_t i = 0; i < counts.size(); ++i)
        out << bin_edges[i] << ',' << counts[i] << '\n';
}

void TdcHistogram::save_csv(const std::string& path) const {
    auto out = open_output(path);
    save_csv(out);
}

TdcHistogram TdcHistogram::load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "bin_start_s,count")
        throw config_error("expected histogram header 'bin_start_s,count'");

    TdcHistogram hist;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw config_error("malformed histogram row: " + line);
        hist.bin_edges.push_back(std::stod(line.substr(0, comma)));
        hist.counts.push_back(std::stoull(line.substr(comma + 1)));
    }
    if (hist.counts.size() < 2)
        throw config_error("histogram needs at least two bins");
    // Starts were stored; recover the final edge from the uniform width.
    const double width = hist.bin_edges[1] - hist.bin_edges[0];
    hist.bin_edges.push_back(hist.bin_edges.back() + width);
    for (auto c : hist.counts) hist.total += c;
    return hist;
}

TdcHistogram TdcHistogram::load_csv(const std::string& path) {
    auto in = open_input(path);
    return load_csv(in);
}

} // namespace ionphase
