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

#include "harq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace rsmaharq {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::RSMA: return "RSMA";
        case Scheme::NOMA: return "NOMA";
        case Scheme::FDMA: return "FDMA";
    }
    return "?";
}

namespace {

void logf(EventLog* log, const char* fmt, ...) {
    if (!log) return;
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    log->line(buf);
}

// One received copy of a stream. `canc` is interference from a specific
// other packet and disappears once that packet is decoded; `perm`
// (the round-0 power of s12) stays until the very end.
struct Copy {
    double own = 0.0;
    double perm = 0.0;
    double canc = 0.0;
    int interferer = -1;
};

struct Packet {
    int user = 0;
    double rate = 0.0;
    std::vector<Copy> copies;
    int tx = 0;
    bool decoded = false;
    bool dropped = false;
    bool got_copy_now = false;  // transmitted in the round being processed
};

double accumulated_metric(const Packet& p, HarqKind kind, const std::vector<Packet>& all) {
    double acc = 0.0;
    for (const Copy& c : p.copies) {
        double interf = c.perm;
        if (c.interferer >= 0 && !all[static_cast<std::size_t>(c.interferer)].decoded) {
            interf += c.canc;
        }
        const double sinr = c.own / (1.0 + interf);
        acc += (kind == HarqKind::CC) ? sinr : std::log2(1.0 + sinr);
    }
    return acc;
}

bool meets_rate(double acc, double rate, HarqKind kind) {
    if (rate <= 0.0) return true;
    return (kind == HarqKind::CC) ? acc >= std::exp2(rate) - 1.0 : acc >= rate;
}

bool decodable(const Packet& p, HarqKind kind, const std::vector<Packet>& all) {
    return meets_rate(accumulated_metric(p, kind, all), p.rate, kind);
}

/// Index of the open (undecoded, undropped) packet of `user`, or -1.
int open_packet(const std::vector<Packet>& all, int user) {
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].user == user && !all[i].decoded && !all[i].dropped) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

/// SIC fixpoint for a retransmission round: any packet that transmitted this
/// round may be decoded first; a silent buffered packet only becomes
/// eligible once the other user has nothing open (its interferers resolved).
/// Decoding one packet upgrades every copy it interfered with, so the loop
/// reruns until nothing more decodes.
std::string sic_fixpoint(std::vector<Packet>& all, HarqKind kind) {
    std::string decoded_now;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < all.size(); ++i) {
            Packet& p = all[i];
            if (p.decoded || p.dropped) continue;
            if (!p.got_copy_now && open_packet(all, 3 - p.user) != -1) continue;
            if (decodable(p, kind, all)) {
                p.decoded = true;
                progress = true;
                if (!decoded_now.empty()) decoded_now += ',';
                decoded_now += 'p';
                decoded_now += std::to_string(i);
            }
        }
    }
    return decoded_now;
}

/// Unsplit two-stream flow shared by NOMA and the RSMA alpha in {0,1}
/// cases. A user whose packet was delivered keeps sending new packets (each
/// tallied on its own) while the other retransmits; SIC tries both orders in
/// retransmission rounds and strips a decoded packet from every buffered
/// round. While BOTH packets are pending the users stop generating traffic
/// and only the stream decoded first retransmits, alone; the other waits
/// buffered with its budget frozen (it cannot decode ahead of its
/// predecessor anyway, and the lone copy arrives interference-free).
TrialOutcome unsplit_trial(const HarqConfig& cfg, const RngStream& rng, double alpha,
                           EventLog* log) {
    if (alpha != 0.0 && alpha != 1.0) {
        throw std::invalid_argument("unsplit flow requires alpha in {0,1}");
    }
    const double r1 = cfg.user1.rate, r2 = cfg.user2.rate;
    const int L = cfg.max_retx;
    const int p_user = (alpha == 1.0) ? 1 : 2;
    const int q_user = 3 - p_user;

    TrialOutcome out;
    out.chosen_alpha = alpha;
    out.energy_user1 = 1.0;
    out.energy_user2 = 1.0;

    const ChannelDraw d0 = rng.draw_round(cfg.user1, cfg.user2, 0);
    out.round0_case = pointwise_case(d0, alpha, r1, r2);

    std::vector<Packet> pkts;
    pkts.reserve(8);
    pkts.push_back({1, r1, {}, 1, false, false, false});
    pkts.push_back({2, r2, {}, 1, false, false, false});
    pkts[0].copies.push_back({d0.g1, 0.0, d0.g2, 1});
    pkts[1].copies.push_back({d0.g2, 0.0, d0.g1, 0});

    const std::size_t pi = (p_user == 1) ? 0 : 1;
    const std::size_t qi = 1 - pi;

    // Round 0 is strictly ordered: if the first stream fails, decoding stops.
    if (decodable(pkts[pi], cfg.kind, pkts)) {
        pkts[pi].decoded = true;
        if (decodable(pkts[qi], cfg.kind, pkts)) pkts[qi].decoded = true;
    }
    logf(log, "round=0 g1=%.17g g2=%.17g alpha=%.17g case=%s dec=%d%d", d0.g1, d0.g2,
         alpha, to_string(out.round0_case), pkts[0].decoded ? 1 : 0,
         pkts[1].decoded ? 1 : 0);

    auto drop_expired = [&](std::string& dropped_now) {
        for (std::size_t i = 0; i < pkts.size(); ++i) {
            Packet& p = pkts[i];
            if (!p.decoded && !p.dropped && p.tx >= L + 1) {
                p.dropped = true;
                (p.user == 1 ? out.failed1 : out.failed2) += 1;
                if (!dropped_now.empty()) dropped_now += ',';
                dropped_now += 'p';
                dropped_now += std::to_string(i);
            }
        }
    };

    std::string dropped0;
    drop_expired(dropped0);
    int round = 0;

    // The epoch ends at the first round where both users are idle at once;
    // packet phases drift, so the bound is a safety net, not a budget.
    const int round_limit = 100000;
    while (open_packet(pkts, 1) != -1 || open_packet(pkts, 2) != -1) {
        ++round;
        if (round > round_limit) throw std::logic_error("unsplit epoch failed to terminate");
        const ChannelDraw d = rng.draw_round(cfg.user1, cfg.user2, static_cast<std::uint64_t>(round));
        const double gp = (p_user == 1) ? d.g1 : d.g2;
        const double gq = (p_user == 1) ? d.g2 : d.g1;
        for (Packet& p : pkts) p.got_copy_now = false;

        int op = open_packet(pkts, p_user);
        int oq = open_packet(pkts, q_user);
        std::string tx_label;
        if (op != -1 && oq != -1) {
            // Both messages pending: new traffic stops and only the stream
            // decoded first retransmits (the other decodes behind it anyway).
            Packet& p = pkts[static_cast<std::size_t>(op)];
            p.copies.push_back({gp, 0.0, 0.0, -1});
            p.tx += 1;
            p.got_copy_now = true;
            (p_user == 1 ? out.energy_user1 : out.energy_user2) += 1.0;
            tx_label = "p" + std::to_string(op);
        } else {
            // An idle user keeps sending fresh packets while the other
            // retransmits; each is a first transmission of its own.
            if (op == -1) {
                op = static_cast<int>(pkts.size());
                pkts.push_back({p_user, (p_user == 1) ? r1 : r2, {}, 1, false, false, false});
                (p_user == 1 ? out.generated1 : out.generated2) += 1;
                tx_label = "new" + std::to_string(op);
            } else {
                pkts[static_cast<std::size_t>(op)].tx += 1;
                tx_label = "p" + std::to_string(op);
            }
            if (oq == -1) {
                oq = static_cast<int>(pkts.size());
                pkts.push_back({q_user, (q_user == 1) ? r1 : r2, {}, 1, false, false, false});
                (q_user == 1 ? out.generated1 : out.generated2) += 1;
                tx_label += "+new" + std::to_string(oq);
            } else {
                pkts[static_cast<std::size_t>(oq)].tx += 1;
                tx_label += "+p" + std::to_string(oq);
            }
            Packet& p = pkts[static_cast<std::size_t>(op)];
            Packet& q = pkts[static_cast<std::size_t>(oq)];
            p.copies.push_back({gp, 0.0, gq, oq});
            q.copies.push_back({gq, 0.0, gp, op});
            p.got_copy_now = true;
            q.got_copy_now = true;
            out.energy_user1 += 1.0;
            out.energy_user2 += 1.0;
        }

        std::string dec = sic_fixpoint(pkts, cfg.kind);
        std::string dropped_now;
        drop_expired(dropped_now);
        if (!dropped_now.empty()) {
            // A drop can unblock a buffered packet.
            const std::string more = sic_fixpoint(pkts, cfg.kind);
            if (!more.empty()) {
                if (!dec.empty()) dec += ',';
                dec += more;
            }
        }
        logf(log, "round=%d tx=%s dec=[%s] drop=[%s] e1=%.17g e2=%.17g", round,
             tx_label.c_str(), dec.c_str(), dropped_now.c_str(), out.energy_user1,
             out.energy_user2);
    }

    out.rounds_used = round + 1;
    out.user1_ok = pkts[0].decoded;
    out.user2_ok = pkts[1].decoded;
    return out;
}

/// Split RSMA flow for a packet pair with plan chosen at round 0. Streams
/// s11 and s2 retransmit per the plan (s11 at power alpha, s2 at full
/// power); s12 is never retransmitted and decodes from the buffered round-0
/// copy once s11 and s2 are in, by construction of the frozen split rate.
TrialOutcome split_trial(const HarqConfig& cfg, const RngStream& rng,
                         const ChannelDraw& d0, const RetransmissionPlan& plan,
                         EventLog* log) {
    const double alpha = plan.chosen_alpha;
    const double r1 = cfg.user1.rate, r2 = cfg.user2.rate;
    const int L = cfg.max_retx;

    TrialOutcome out;
    out.chosen_alpha = alpha;
    out.round0_case = plan.case_id;
    out.energy_user1 = 1.0;
    out.energy_user2 = 1.0;

    const SinrTriple s0 = sinr_components(d0, alpha);
    const double r12 = std::min(r1, std::log2(1.0 + s0.s12));
    const double r11 = r1 - r12;

    std::vector<Packet> pkts(2);
    Packet& s11 = pkts[0];
    Packet& s2 = pkts[1];
    s11.user = 1;
    s11.rate = r11;
    s11.tx = 1;
    s11.copies.push_back({alpha * d0.g1, (1.0 - alpha) * d0.g1, d0.g2, 1});
    s2.user = 2;
    s2.rate = r2;
    s2.tx = 1;
    s2.copies.push_back({d0.g2, (1.0 - alpha) * d0.g1, alpha * d0.g1, 0});

    // Round-0 decoding is strictly ordered, so only the S2_ONLY case leaves
    // anything decoded (s11 met its target under full interference).
    if (plan.case_id == RetxCase::S2Only) s11.decoded = true;

    logf(log, "round=0 g1=%.17g g2=%.17g alpha=%.17g case=%s dec=%d0", d0.g1, d0.g2,
         alpha, to_string(plan.case_id), s11.decoded ? 1 : 0);

    for (std::size_t i = 0; i < pkts.size(); ++i) {
        Packet& p = pkts[i];
        if (!p.decoded && p.tx >= L + 1 &&
            ((i == 0) ? plan.retransmit_s11 : plan.retransmit_s2)) {
            p.dropped = true;  // L = 0: the round-0 copy was the only shot
        }
    }

    int round = 0;
    while (true) {
        const bool tx11 = plan.retransmit_s11 && !s11.decoded && !s11.dropped;
        const bool tx2 = plan.retransmit_s2 && !s2.decoded && !s2.dropped;
        if (!tx11 && !tx2) break;
        ++round;
        if (round > L + 1) throw std::logic_error("split epoch failed to terminate");
        const ChannelDraw d = rng.draw_round(cfg.user1, cfg.user2, static_cast<std::uint64_t>(round));
        for (Packet& p : pkts) p.got_copy_now = false;

        if (tx11) {
            s11.copies.push_back({alpha * d.g1, 0.0, tx2 ? d.g2 : 0.0, tx2 ? 1 : -1});
            s11.tx += 1;
            s11.got_copy_now = true;
            out.energy_user1 += alpha;
        }
        if (tx2) {
            s2.copies.push_back({d.g2, 0.0, tx11 ? alpha * d.g1 : 0.0, tx11 ? 0 : -1});
            s2.tx += 1;
            s2.got_copy_now = true;
            out.energy_user2 += 1.0;
        }

        std::string dec = sic_fixpoint(pkts, cfg.kind);
        // A stream outside the retransmit set decodes from its buffer the
        // moment its predecessor is in: the plan's region guarantees the
        // buffered copy meets the rate, so honor that directly instead of
        // re-deriving it through a second floating-point route (the chosen
        // alpha often sits exactly on the region boundary).
        if (!plan.retransmit_s2 && s11.decoded && !s2.decoded && !s2.dropped) {
            s2.decoded = true;
            if (!dec.empty()) dec += ',';
            dec += "p1";
        }
        std::string dropped_now;
        for (std::size_t i = 0; i < pkts.size(); ++i) {
            Packet& p = pkts[i];
            if (!p.decoded && !p.dropped && p.tx >= L + 1 &&
                ((i == 0) ? plan.retransmit_s11 : plan.retransmit_s2)) {
                p.dropped = true;
                if (!dropped_now.empty()) dropped_now += ',';
                dropped_now += (i == 0) ? "s11" : "s2";
            }
        }
        logf(log, "round=%d tx=%s%s dec=[%s] drop=[%s] e1=%.17g e2=%.17g", round,
             tx11 ? "s11" : "", tx2 ? (tx11 ? "+s2" : "s2") : "", dec.c_str(),
             dropped_now.c_str(), out.energy_user1, out.energy_user2);
    }

    out.rounds_used = round + 1;
    out.user1_ok = s11.decoded && s2.decoded;  // s12 rides on both
    out.user2_ok = s2.decoded;
    out.failed1 = out.user1_ok ? 0 : 1;
    out.failed2 = out.user2_ok ? 0 : 1;
    return out;
}

TrialOutcome fdma_trial_impl(const HarqConfig& cfg, const RngStream& rng, EventLog* log) {
    if (!(cfg.fdma_w1 > 0.0 && cfg.fdma_w1 < 1.0)) {
        throw std::invalid_argument("fdma_trial: fdma_w1 must be in (0,1)");
    }
    const double w[2] = {cfg.fdma_w1, 1.0 - cfg.fdma_w1};
    const double r[2] = {cfg.user1.rate, cfg.user2.rate};
    const int L = cfg.max_retx;

    TrialOutcome out;
    out.chosen_alpha = 0.0;
    double metric[2] = {0.0, 0.0};
    bool ok[2] = {false, false};
    int rounds[2] = {0, 0};
    double energy[2] = {0.0, 0.0};

    for (int t = 0; t <= L && !(ok[0] && ok[1]); ++t) {
        const ChannelDraw d = rng.draw_round(cfg.user1, cfg.user2, static_cast<std::uint64_t>(t));
        const double g[2] = {d.g1, d.g2};
        for (int k = 0; k < 2; ++k) {
            if (ok[k]) continue;
            energy[k] += 1.0;
            rounds[k] = t + 1;
            if (cfg.kind == HarqKind::CC) {
                metric[k] += g[k] / w[k];
                ok[k] = w[k] * std::log2(1.0 + metric[k]) >= r[k];
            } else {
                metric[k] += w[k] * std::log2(1.0 + g[k] / w[k]);
                ok[k] = metric[k] >= r[k];
            }
        }
        logf(log, "round=%d ok=%d%d e1=%.17g e2=%.17g", t, ok[0] ? 1 : 0, ok[1] ? 1 : 0,
             energy[0], energy[1]);
    }

    out.user1_ok = ok[0];
    out.user2_ok = ok[1];
    out.failed1 = ok[0] ? 0 : 1;
    out.failed2 = ok[1] ? 0 : 1;
    out.energy_user1 = energy[0];
    out.energy_user2 = energy[1];
    out.rounds_used = std::max(rounds[0], rounds[1]);
    return out;
}

}  // namespace

TrialOutcome rsma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log) {
    const double r1 = cfg.user1.rate, r2 = cfg.user2.rate;
    const double G1 = cfg.user1.avg_gain_linear(), G2 = cfg.user2.avg_gain_linear();

    if (cfg.pinned_alpha && (*cfg.pinned_alpha == 0.0 || *cfg.pinned_alpha == 1.0)) {
        // Pinning to an endpoint disables splitting: this is the NOMA flow.
        return unsplit_trial(cfg, rng, *cfg.pinned_alpha, log);
    }

    const ChannelDraw d0 = rng.draw_round(cfg.user1, cfg.user2, 0);
    const RetransmissionPlan plan =
        cfg.pinned_alpha ? plan_for_alpha(d0, *cfg.pinned_alpha, r1, r2, G1, G2, cfg.kind)
                         : select_alpha(d0, r1, r2, G1, G2, cfg.kind);

    if (plan.case_id == RetxCase::NoRetx) {
        TrialOutcome out;
        out.chosen_alpha = plan.chosen_alpha;
        out.round0_case = RetxCase::NoRetx;
        out.user1_ok = true;
        out.user2_ok = true;
        out.rounds_used = 1;
        out.energy_user1 = 1.0;
        out.energy_user2 = 1.0;
        logf(log, "round=0 g1=%.17g g2=%.17g alpha=%.17g case=%s dec=11", d0.g1, d0.g2,
             plan.chosen_alpha, to_string(RetxCase::NoRetx));
        return out;
    }
    if (plan.case_id == RetxCase::SpecialAlpha1 || plan.case_id == RetxCase::SpecialAlpha0 ||
        ((plan.chosen_alpha == 0.0 || plan.chosen_alpha == 1.0) &&
         plan.case_id == RetxCase::Both)) {
        // Whole messages on both sides: the special cases deliver one user in
        // round 0 (new-packet machinery follows); a both-pending start at an
        // endpoint alpha runs the paused flow (at alpha=0 the message of
        // user 1 rides entirely on s12, so there is no split stream to
        // retransmit and the stream decoded first goes alone). The remaining
        // endpoint cases (S11_ONLY at alpha=1, S2_ONLY at alpha=0) keep the
        // single-stream retransmission of the split flow.
        return unsplit_trial(cfg, rng, plan.chosen_alpha, log);
    }
    return split_trial(cfg, rng, d0, plan, log);
}

TrialOutcome noma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log) {
    if (cfg.noma_alpha != 0 && cfg.noma_alpha != 1) {
        throw std::invalid_argument("noma_trial: noma_alpha must be 0 or 1");
    }
    return unsplit_trial(cfg, rng, static_cast<double>(cfg.noma_alpha), log);
}

TrialOutcome fdma_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log) {
    return fdma_trial_impl(cfg, rng, log);
}

TrialOutcome run_trial(const HarqConfig& cfg, const RngStream& rng, EventLog* log) {
    switch (cfg.scheme) {
        case Scheme::RSMA: return rsma_trial(cfg, rng, log);
        case Scheme::NOMA: return noma_trial(cfg, rng, log);
        case Scheme::FDMA: return fdma_trial(cfg, rng, log);
    }
    throw std::invalid_argument("run_trial: unknown scheme");
}

double optimize_fdma_w(const HarqConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
    constexpr std::uint64_t kFdmaDomain = 0x46444D415F573031ull;  // "FDMA_W01"
    const int L = cfg.max_retx;
    const int rounds = L + 1;

    // Cache the per-trial channel draws once; every grid point replays the
    // same numbers (common random numbers).
    std::vector<double> gains(static_cast<std::size_t>(trials) * rounds * 2);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const RngStream rng(seed, t, kFdmaDomain);
        for (int l = 0; l < rounds; ++l) {
            const ChannelDraw d = rng.draw_round(cfg.user1, cfg.user2, static_cast<std::uint64_t>(l));
            gains[(t * rounds + l) * 2 + 0] = d.g1;
            gains[(t * rounds + l) * 2 + 1] = d.g2;
        }
    }

    const double r[2] = {cfg.user1.rate, cfg.user2.rate};
    double best_w = 0.01;
    double best_obj = std::numeric_limits<double>::infinity();
    double widest_zero = -1.0;
    for (int i = 1; i <= 99; ++i) {
        const double w1 = i / 100.0;
        const double w[2] = {w1, 1.0 - w1};
        std::uint64_t fails[2] = {0, 0};
        for (std::uint64_t t = 0; t < trials; ++t) {
            for (int k = 0; k < 2; ++k) {
                double metric = 0.0;
                bool ok = false;
                for (int l = 0; l < rounds && !ok; ++l) {
                    const double g = gains[(t * rounds + l) * 2 + k];
                    if (cfg.kind == HarqKind::CC) {
                        metric += g / w[k];
                        ok = w[k] * std::log2(1.0 + metric) >= r[k];
                    } else {
                        metric += w[k] * std::log2(1.0 + g / w[k]);
                        ok = metric >= r[k];
                    }
                }
                if (!ok) fails[k] += 1;
            }
        }
        const double obj = static_cast<double>(fails[0] + fails[1]);
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w1;
        }
        if (obj == 0.0) widest_zero = w1;
    }
    // When several splits show no failures at all, hand the spare bandwidth
    // to user 1 (ties are common only under degenerate demand).
    return best_obj == 0.0 ? widest_zero : best_w;
}

}  // namespace rsmaharq
