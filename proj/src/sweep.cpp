/*
   Copyright 2026 the rsmaharq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "quadrature.hpp"

namespace rsmaharq {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::string g6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run work(i) for i in [0, n) on a small pool. Output written by index
/// stays deterministic under any schedule.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& work) {
    const int nw = std::min<std::size_t>(worker_count(threads), n == 0 ? 1 : n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int t = 0; t < nw; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                work(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_scheme(const std::string& s, Scheme& out) {
    if (s == "RSMA") out = Scheme::RSMA;
    else if (s == "NOMA") out = Scheme::NOMA;
    else if (s == "FDMA") out = Scheme::FDMA;
    else return false;
    return true;
}

bool parse_kind(const std::string& s, HarqKind& out) {
    if (s == "CC") out = HarqKind::CC;
    else if (s == "IR") out = HarqKind::IR;
    else return false;
    return true;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
    try {
        std::size_t pos = 0;
        out = std::stoull(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

std::vector<double> SweepSpec::rates() const {
    std::vector<double> out;
    if (rate_step <= 0.0) return out;
    const int n = static_cast<int>(std::floor((rate_stop - rate_start) / rate_step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) out.push_back(rate_start + i * rate_step);
    return out;
}

bool sweep_spec_set(SweepSpec& spec, const std::string& key, const std::string& value,
                    std::string& err) {
    const std::string v = trim(value);
    auto fail = [&](const std::string& what) {
        err = "field '" + key + "': " + what + " ('" + v + "')";
        return false;
    };
    if (key == "schemes") {
        std::vector<Scheme> out;
        for (const std::string& part : split(v, ',')) {
            Scheme s;
            if (!parse_scheme(trim(part), s)) return fail("unknown scheme");
            out.push_back(s);
        }
        if (out.empty()) return fail("empty list");
        spec.schemes = out;
    } else if (key == "kinds" || key == "harq") {
        std::vector<HarqKind> out;
        for (const std::string& part : split(v, ',')) {
            HarqKind k;
            if (!parse_kind(trim(part), k)) return fail("unknown HARQ kind");
            out.push_back(k);
        }
        if (out.empty()) return fail("empty list");
        spec.kinds = out;
    } else if (key == "L_values" || key == "retx") {
        std::vector<int> out;
        for (const std::string& part : split(v, ',')) {
            std::uint64_t l;
            if (!parse_u64(trim(part), l)) return fail("bad integer");
            out.push_back(static_cast<int>(l));
        }
        if (out.empty()) return fail("empty list");
        spec.l_values = out;
    } else if (key == "rate_start") {
        if (!parse_double(v, spec.rate_start)) return fail("bad number");
    } else if (key == "rate_stop") {
        if (!parse_double(v, spec.rate_stop)) return fail("bad number");
    } else if (key == "rate_step") {
        if (!parse_double(v, spec.rate_step)) return fail("bad number");
    } else if (key == "gamma1_db") {
        if (!parse_double(v, spec.gamma1_db)) return fail("bad number");
    } else if (key == "gamma2_db") {
        if (!parse_double(v, spec.gamma2_db)) return fail("bad number");
    } else if (key == "trials") {
        if (!parse_u64(v, spec.trials)) return fail("bad integer");
    } else if (key == "seed") {
        if (!parse_u64(v, spec.seed)) return fail("bad integer");
    } else if (key == "threads") {
        std::uint64_t t;
        if (!parse_u64(v, t)) return fail("bad integer");
        spec.threads = static_cast<int>(t);
    } else {
        err = "unknown field '" + key + "'";
        return false;
    }
    return true;
}

bool sweep_spec_load_file(SweepSpec& spec, const std::string& path, std::string& err) {
    std::ifstream in(path);
    if (!in) {
        err = "cannot open config file: " + path;
        return false;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            err = path + ":" + std::to_string(lineno) + ": expected key = value";
            return false;
        }
        if (!sweep_spec_set(spec, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)), err)) {
            err = path + ":" + std::to_string(lineno) + ": " + err;
            return false;
        }
    }
    return true;
}

std::string sweep_spec_problem(const SweepSpec& spec) {
    if (spec.schemes.empty()) return "schemes: empty";
    if (spec.kinds.empty()) return "kinds: empty";
    if (spec.l_values.empty()) return "L_values: empty";
    for (int l : spec.l_values) {
        if (l < 0) return "L_values: must be >= 0";
    }
    if (spec.rate_step <= 0.0) return "rate_step: must be > 0";
    if (spec.rate_stop < spec.rate_start) return "rate_stop: must be >= rate_start";
    if (spec.rate_start < 0.0) return "rate_start: must be >= 0";
    if (spec.trials < 1) return "trials: must be >= 1";
    if (!std::isfinite(spec.gamma1_db) || !std::isfinite(spec.gamma2_db)) {
        return "gamma_db: must be finite";
    }
    return "";
}

double wilson_center(std::uint64_t fails, std::uint64_t n) {
    const double z2 = kZ95 * kZ95;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(fails) / nn;
    return (p + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
}

double wilson_halfwidth(std::uint64_t fails, std::uint64_t n) {
    const double z2 = kZ95 * kZ95;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(fails) / nn;
    return kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
}

namespace {

struct BlockAcc {
    std::uint64_t gen[2] = {0, 0};
    std::uint64_t fail[2] = {0, 0};
    double energy[2] = {0.0, 0.0};
    double sum_alpha = 0.0;
    // Ratio-estimator moments for energy per packet: per-trial totals
    // e = e1 + e2, k = generated packets.
    double se = 0.0, sk = 0.0, see = 0.0, skk = 0.0, sek = 0.0;
};

BlockAcc run_block(const HarqConfig& cfg, std::uint64_t seed, std::uint64_t first,
                   std::uint64_t count) {
    BlockAcc acc;
    for (std::uint64_t t = first; t < first + count; ++t) {
        const RngStream rng(seed, t);
        const TrialOutcome o = run_trial(cfg, rng);
        acc.gen[0] += o.generated1;
        acc.gen[1] += o.generated2;
        acc.fail[0] += o.failed1;
        acc.fail[1] += o.failed2;
        acc.energy[0] += o.energy_user1;
        acc.energy[1] += o.energy_user2;
        acc.sum_alpha += o.chosen_alpha;
        const double e = o.energy_user1 + o.energy_user2;
        const double k = static_cast<double>(o.generated1 + o.generated2);
        acc.se += e;
        acc.sk += k;
        acc.see += e * e;
        acc.skk += k * k;
        acc.sek += e * k;
    }
    return acc;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    const std::string problem = sweep_spec_problem(spec);
    if (!problem.empty()) throw std::invalid_argument("run_sweep: " + problem);

    SweepResult out;
    const std::vector<double> rate_grid = spec.rates();
    constexpr std::uint64_t kBlock = 1024;

    for (Scheme scheme : spec.schemes) {
        for (HarqKind kind : spec.kinds) {
            for (int l : spec.l_values) {
                for (double rate : rate_grid) {
                    HarqConfig cfg;
                    cfg.scheme = scheme;
                    cfg.kind = kind;
                    cfg.max_retx = l;
                    cfg.user1.avg_gain_db = spec.gamma1_db;
                    cfg.user1.rate = rate;
                    cfg.user2.avg_gain_db = spec.gamma2_db;
                    cfg.user2.rate = rate;
                    cfg.noma_alpha = spec.gamma1_db >= spec.gamma2_db ? 1 : 0;
                    if (scheme == Scheme::FDMA) {
                        cfg.fdma_w1 = optimize_fdma_w(cfg, 10000, spec.seed);
                    }

                    const std::uint64_t nblocks = (spec.trials + kBlock - 1) / kBlock;
                    std::vector<BlockAcc> blocks(nblocks);
                    parallel_for(nblocks, spec.threads, [&](std::size_t b) {
                        const std::uint64_t first = b * kBlock;
                        const std::uint64_t count = std::min(kBlock, spec.trials - first);
                        blocks[b] = run_block(cfg, spec.seed, first, count);
                    });

                    BlockAcc total;
                    for (const BlockAcc& b : blocks) {
                        for (int k = 0; k < 2; ++k) {
                            total.gen[k] += b.gen[k];
                            total.fail[k] += b.fail[k];
                            total.energy[k] += b.energy[k];
                        }
                        total.sum_alpha += b.sum_alpha;
                        total.se += b.se;
                        total.sk += b.sk;
                        total.see += b.see;
                        total.skk += b.skk;
                        total.sek += b.sek;
                    }

                    PointStats st;
                    st.scheme = scheme;
                    st.kind = kind;
                    st.l = l;
                    st.rate = rate;
                    for (int k = 0; k < 2; ++k) {
                        st.generated[k] = total.gen[k];
                        st.failed[k] = total.fail[k];
                        st.energy[k] = total.energy[k];
                    }
                    const double R = (total.se) / total.sk;
                    st.power_per_packet = R;
                    const double n = static_cast<double>(spec.trials);
                    if (spec.trials > 1) {
                        const double ss = total.see - 2.0 * R * total.sek + R * R * total.skk;
                        const double var = std::max(0.0, ss) * (n / (n - 1.0)) / (total.sk * total.sk);
                        st.power_ci95_halfwidth = kZ95 * std::sqrt(var);
                    }
                    out.stats.push_back(st);

                    for (int user = 1; user <= 2; ++user) {
                        SweepRecord r;
                        r.scheme = scheme;
                        r.kind = kind;
                        r.l = l;
                        r.rate = rate;
                        r.user = user;
                        const std::uint64_t gen = total.gen[user - 1];
                        const std::uint64_t fail = total.fail[user - 1];
                        r.error_prob = static_cast<double>(fail) / static_cast<double>(gen);
                        r.ci95_halfwidth = wilson_halfwidth(fail, gen);
                        r.avg_power_per_packet = R;
                        r.trials = spec.trials;
                        r.seed = spec.seed;
                        if (scheme == Scheme::FDMA) {
                            r.has_fdma_w1 = true;
                            r.fdma_w1 = cfg.fdma_w1;
                        }
                        if (scheme == Scheme::RSMA) {
                            r.has_mean_alpha = true;
                            r.mean_chosen_alpha = total.sum_alpha / n;
                        }
                        out.records.push_back(r);
                    }
                }
            }
        }
    }
    return out;
}

namespace {

const char* kCsvHeader =
    "scheme,kind,L,rate,user,error_prob,ci95_halfwidth,avg_power_per_packet,"
    "trials,seed,fdma_w1,mean_chosen_alpha";

}  // namespace

std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRecord& r : records) {
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.kind);
        out += ',';
        out += std::to_string(r.l);
        out += ',';
        out += g6(r.rate);
        out += ',';
        out += std::to_string(r.user);
        out += ',';
        out += g6(r.error_prob);
        out += ',';
        out += g6(r.ci95_halfwidth);
        out += ',';
        out += g6(r.avg_power_per_packet);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        if (r.has_fdma_w1) out += g6(r.fdma_w1);
        out += ',';
        if (r.has_mean_alpha) out += g6(r.mean_chosen_alpha);
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    const std::string text = to_csv(records);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<SweepRecord> parse_csv(const std::string& text) {
    std::vector<SweepRecord> out;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line != kCsvHeader) throw std::runtime_error("parse_csv: unexpected header");
            continue;
        }
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 12) throw std::runtime_error("parse_csv: bad field count");
        SweepRecord r;
        if (!parse_scheme(f[0], r.scheme)) throw std::runtime_error("parse_csv: scheme");
        if (!parse_kind(f[1], r.kind)) throw std::runtime_error("parse_csv: kind");
        r.l = std::stoi(f[2]);
        r.rate = std::stod(f[3]);
        r.user = std::stoi(f[4]);
        r.error_prob = std::stod(f[5]);
        r.ci95_halfwidth = std::stod(f[6]);
        r.avg_power_per_packet = std::stod(f[7]);
        r.trials = std::stoull(f[8]);
        r.seed = std::stoull(f[9]);
        if (!f[10].empty()) {
            r.has_fdma_w1 = true;
            r.fdma_w1 = std::stod(f[10]);
        }
        if (!f[11].empty()) {
            r.has_mean_alpha = true;
            r.mean_chosen_alpha = std::stod(f[11]);
        }
        out.push_back(r);
    }
    return out;
}

namespace {

constexpr std::uint64_t kValidateDomain = 0x56414C4944415445ull;  // "VALIDATE"

struct ValidatePoint {
    double rel_err = 0.0;
    double abs_z = 0.0;
    bool has_z = false;
    bool z_ok = true;
    bool converged = true;
    std::string desc;
};

ValidatePoint validate_one(std::size_t i, std::uint64_t seed, std::uint64_t mc_draws) {
    const RngStream rng(seed, i, kValidateDomain);
    const int type = static_cast<int>(i % 4);
    const HarqKind kind = (i % 2 == 0) ? HarqKind::CC : HarqKind::IR;

    ValidatePoint out;
    for (std::uint64_t attempt = 0; attempt < 20; ++attempt) {
        auto u = [&](std::uint32_t slot) { return rng.uniform01(attempt, slot + 8); };
        const double G1 = std::pow(10.0, 1.0 + 2.0 * u(0));
        const double G2 = std::pow(10.0, std::log10(3.0) + u(1) * (std::log10(300.0) - std::log10(3.0)));
        const double alpha = 0.05 + 0.9 * u(2);

        double a1, b1, a2, b2;
        bool special = false;
        if (type <= 1) {
            // Physical thresholds from a random draw.
            const ChannelDraw d = {-G1 * std::log(u(3)), -G2 * std::log(u(4))};
            const double r1 = 0.25 + 3.75 * u(5);
            const double r2 = 0.25 + 3.75 * u(6);
            const ThresholdSet ts = joint_thresholds(d, alpha, r1, r2, kind);
            a1 = ts.g11_1;
            b1 = ts.g2_1;
            a2 = ts.g11_2;
            b2 = ts.g2_2;
        } else if (type == 2) {
            // Synthetic thresholds forced onto a chosen branch.
            a1 = std::exp(std::log(0.05) + u(3) * (std::log(5.0) - std::log(0.05)));
            const double product = (i / 4 % 2 == 0) ? 1.05 + 3.0 * u(4) : 0.05 + 0.9 * u(4);
            b1 = product / a1;
            a2 = a1 * (-0.5 + 1.5 * u(5));
            b2 = b1 * (-0.5 + 1.5 * u(6));
        } else {
            special = true;
            a1 = std::exp(std::log(0.05) + u(3) * (std::log(5.0) - std::log(0.05)));
            const double product = (i / 4 % 2 == 0) ? 1.05 + 3.0 * u(4) : 0.05 + 0.9 * u(4);
            b1 = product / a1;
            a2 = a1;
            b2 = b1;
        }

        ErrorPair cf;
        OracleResult oracle;
        std::uint64_t mc_hits_p1 = 0, mc_hits_p2 = 0;
        if (special) {
            const SpecialThresholds st{a1, b1};
            cf = p_special_from(st, G1, G2);
            oracle = oracle_special(st, G1, G2);
        } else {
            ThresholdSet ts;
            ts.g11_1 = a1;
            ts.g2_1 = b1;
            ts.g11_2 = a2;
            ts.g2_2 = b2;
            ts.kind = kind;
            cf = p_joint(ts, G1, G2, alpha);
            oracle = oracle_joint(ts, G1, G2, alpha);
        }

        const double denom1 = std::max(oracle.value.p11, 1e-12);
        const double denom2 = std::max(oracle.value.p2, 1e-12);
        const double rel = std::max(std::abs(cf.p11 - oracle.value.p11) / denom1,
                                    std::abs(cf.p2 - oracle.value.p2) / denom2);

        const bool informative = cf.p11 > 1e-4 && cf.p11 < 1.0 - 1e-4 && cf.p2 > 1e-4 &&
                                 cf.p2 < 1.0 - 1e-4;
        if (!informative && attempt + 1 < 20) continue;

        out.rel_err = rel;
        out.converged = oracle.converged;
        if (informative && mc_draws > 0) {
            const McPair mc = mc_joint_events(a1, b1, a2, b2, special ? 1.0 : alpha, G1,
                                              G2, mc_draws, seed, i);
            mc_hits_p1 = special ? mc.hits1_special() : mc.hits11();
            mc_hits_p2 = mc.hits2();
            const double z1 = binomial_z(mc_hits_p1, mc.n, cf.p11);
            const double z2 = binomial_z(mc_hits_p2, mc.n, cf.p2);
            out.abs_z = std::max(std::abs(z1), std::abs(z2));
            out.has_z = true;
            out.z_ok = out.abs_z <= 4.0;
        }
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "point=%zu kind=%s type=%s branch=%s rel_err=%.3g%s%s", i,
                      to_string(kind), special ? "special" : "joint",
                      (a1 > 0 && b1 > 0 && a1 * b1 >= 1.0) ? "A" : "B", out.rel_err,
                      out.has_z ? (" z=" + g6(out.abs_z)).c_str() : "",
                      oracle.converged ? "" : " NONCONVERGED");
        out.desc = buf;
        return out;
    }
    return out;
}

}  // namespace

ValidationReport run_validate(int grid_size, std::uint64_t seed, std::uint64_t mc_draws,
                              int threads) {
    if (grid_size < 1) throw std::invalid_argument("run_validate: grid_size must be >= 1");
    ValidationReport rep;
    rep.points = grid_size;

    std::vector<ValidatePoint> points(static_cast<std::size_t>(grid_size));
    parallel_for(points.size(), threads,
                 [&](std::size_t i) { points[i] = validate_one(i, seed, mc_draws); });

    for (const ValidatePoint& p : points) {
        rep.max_rel_err = std::max(rep.max_rel_err, p.rel_err);
        if (p.has_z) {
            rep.z_points += 1;
            rep.max_abs_z = std::max(rep.max_abs_z, p.abs_z);
            if (!p.z_ok) rep.z_failures += 1;
        }
        if (!p.converged) rep.nonconverged += 1;
        rep.text += p.desc;
        rep.text += '\n';
    }
    rep.passed = rep.max_rel_err <= 1e-6 && rep.z_failures == 0 && rep.nonconverged == 0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "summary: points=%d max_rel_err=%.3g z_points=%d max_abs_z=%.3g "
                  "z_failures=%d nonconverged=%d result=%s",
                  rep.points, rep.max_rel_err, rep.z_points, rep.max_abs_z, rep.z_failures,
                  rep.nonconverged, rep.passed ? "PASS" : "FAIL");
    rep.text += buf;
    rep.text += '\n';
    return rep;
}

}  // namespace rsmaharq
