// Copyright 2026 The qkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// BB84 key distribution over a simulated quantum channel.
//
// A Sender prepares each qubit as a 1-qubit circuit (value, axis), an
// Eavesdropper may intercept-resend it, and a Receiver measures it in a
// random axis. Both sides publish axes, keep the positions where they agree
// (sifting), and the Receiver publishes the first half of the sifted key. Any
// disagreement there aborts the run; otherwise the unpublished half is a
// one-time pad for the message.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkit/algorithm.hpp"

namespace qkit::bb84 {

using Bit = std::uint8_t;
using Bits = std::vector<Bit>;

enum class Axis : std::uint8_t { Z, X };

inline char axis_symbol(Axis a) { return a == Axis::Z ? 'Z' : 'X'; }
inline Axis opposite(Axis a) { return a == Axis::Z ? Axis::X : Axis::Z; }

/// (0,Z) -> no gates, (0,X) -> H, (1,Z) -> X, (1,X) -> X then H.
inline Circuit encode_qubit(Bit value, Axis axis) {
    Circuit c(1);
    if (value) {
        c.x(0);
    }
    if (axis == Axis::X) {
        c.h(0);
    }
    return c;
}

inline Statevector prepare(Bit value, Axis axis) { return encode_qubit(value, axis).final_state(); }

struct Measurement {
    Bit bit;
    Statevector state;  // collapsed: the eigenstate of `axis` matching `bit`
};

/// Measures a single qubit in `axis`. X-axis measurement rotates with H,
/// reads the computational bit and re-prepares the X eigenstate.
inline Measurement measure_in_axis(const Statevector &state, Axis axis, Rng &rng) {
    if (state.num_qubits() != 1) {
        throw CapacityError("axis measurement expects a single qubit, got " + std::to_string(state.num_qubits()));
    }
    Statevector rotated = state;
    if (axis == Axis::X) {
        rotated.apply(Gate::h(0));
    }
    const Bit bit = static_cast<Bit>(rotated.sample_index(rng));
    return {bit, prepare(bit, axis)};
}

struct ChannelPolicy {
    double interception_density = 0;

    explicit ChannelPolicy(double density) : interception_density(density) {
        if (!(density >= 0.0 && density <= 1.0)) {
            throw ValidationError("density", "interception density must be in [0, 1]");
        }
    }
};

struct EveMeasurement {
    Axis axis;
    Bit result;
    bool operator==(const EveMeasurement &) const = default;
};

/// nullopt means the qubit passed untouched.
using EveAction = std::optional<EveMeasurement>;

struct Interception {
    Statevector state;
    EveAction action;
};

/// Intercept-resend: with probability `density` the eavesdropper measures in
/// a uniformly random axis and forwards the collapsed state.
inline Interception intercept(Statevector state, const ChannelPolicy &policy, Rng &rng) {
    if (!rng.bernoulli(policy.interception_density)) {
        return {std::move(state), std::nullopt};
    }
    const Axis axis = rng.bit() ? Axis::X : Axis::Z;
    auto m = measure_in_axis(state, axis, rng);
    return {std::move(m.state), EveMeasurement{axis, m.bit}};
}

/// Positions where both parties used the same axis.
inline std::vector<std::size_t> sift(std::span<const Axis> sender_axes, std::span<const Axis> receiver_axes) {
    if (sender_axes.size() != receiver_axes.size()) {
        throw ValidationError("axes", "sender and receiver axis lists differ in length");
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < sender_axes.size(); ++i) {
        if (sender_axes[i] == receiver_axes[i]) {
            kept.push_back(i);
        }
    }
    return kept;
}

/// Half publishes the first ceil(L/2) sifted bits. Full publishes all of
/// them; it leaves no key and exists to measure detection rates.
enum class Comparison { Half, Full };

enum class Verdict { Secure, Aborted, KeyTooShort };

inline const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Secure:
            return "secure";
        case Verdict::Aborted:
            return "aborted";
        case Verdict::KeyTooShort:
            return "key_too_short";
    }
    return "?";
}

struct Verification {
    Verdict verdict;
    std::vector<std::size_t> published;  // indices into the sifted sequence
    Bits remaining_key;                  // receiver's unpublished bits
};

/// Compares the published part of the sifted keys. Half mode needs L >= 2.
inline Verification verify(std::span<const Bit> sender, std::span<const Bit> receiver,
                           Comparison mode = Comparison::Half) {
    if (sender.size() != receiver.size()) {
        throw ValidationError("sifted", "sender and receiver sifted keys differ in length");
    }
    const std::size_t len = sender.size();
    if (mode == Comparison::Half && len < 2) {
        throw KeyTooShort("verification needs at least 2 sifted bits, got " + std::to_string(len));
    }
    const std::size_t published = mode == Comparison::Half ? (len + 1) / 2 : len;
    Verification v{Verdict::Secure, {}, {}};
    for (std::size_t i = 0; i < published; ++i) {
        v.published.push_back(i);
        if (sender[i] != receiver[i]) {
            v.verdict = Verdict::Aborted;
        }
    }
    v.remaining_key.assign(receiver.begin() + static_cast<std::ptrdiff_t>(published), receiver.end());
    return v;
}

/// Probability that at least one of n transmitted qubits reveals the
/// eavesdropper when every sifted bit is compared: 1 - (1 - density/8)^n.
inline double abort_probability(std::uint64_t n, double density) {
    return 1.0 - std::pow(1.0 - density / 8.0, static_cast<double>(n));
}

enum class Role { Sender, Receiver, Eavesdropper };

/// Common state of the protocol entities: a bit and an axis per qubit.
class Participant {
   public:
    explicit Participant(Role role) : role_(role) {}

    Role role() const { return role_; }
    const Bits &bits() const { return bits_; }
    const std::vector<Axis> &axes() const { return axes_; }

    void choose_axes(std::size_t m, Rng &rng) {
        axes_.resize(m);
        for (auto &a : axes_) {
            a = rng.bit() ? Axis::X : Axis::Z;
        }
    }

    /// Bits at the given positions.
    Bits select(std::span<const std::size_t> positions) const {
        Bits out;
        out.reserve(positions.size());
        for (auto p : positions) {
            out.push_back(bits_[p]);
        }
        return out;
    }

   protected:
    Role role_;
    Bits bits_;
    std::vector<Axis> axes_;
};

class Sender : public Participant {
   public:
    Sender() : Participant(Role::Sender) {}

    void choose_values(std::size_t m, Rng &rng) {
        bits_.resize(m);
        for (auto &b : bits_) {
            b = rng.bit() ? 1 : 0;
        }
    }

    Statevector emit(std::size_t i) const { return prepare(bits_[i], axes_[i]); }
};

class Receiver : public Participant {
   public:
    Receiver() : Participant(Role::Receiver) {}

    void receive(std::size_t i, const Statevector &state, Rng &rng) {
        if (bits_.size() <= i) {
            bits_.resize(i + 1);
        }
        bits_[i] = measure_in_axis(state, axes_[i], rng).bit;
    }
};

class Eavesdropper : public Participant {
   public:
    explicit Eavesdropper(ChannelPolicy policy) : Participant(Role::Eavesdropper), policy_(policy) {}

    Statevector tap(Statevector state, Rng &rng) {
        auto r = intercept(std::move(state), policy_, rng);
        actions_.push_back(r.action);
        return std::move(r.state);
    }

    const std::vector<EveAction> &actions() const { return actions_; }

   private:
    ChannelPolicy policy_;
    std::vector<EveAction> actions_;
};

struct ProtocolConfig {
    std::size_t oversample_factor = 6;
    std::size_t max_retries = 10;
    Comparison comparison = Comparison::Half;
};

/// Everything that happened in one protocol run (the last attempt when the
/// key fell short and the run was retried).
struct Bb84Trace {
    std::size_t transmitted_count = 0;
    Bits sender_bits;
    std::vector<Axis> sender_axes;
    std::vector<EveAction> eve_actions;
    std::vector<Axis> receiver_axes;
    Bits receiver_bits;
    std::vector<std::size_t> sifted_positions;     // transmission indices
    std::vector<std::size_t> published_positions;  // transmission indices, subset of sifted
    Verdict verdict = Verdict::KeyTooShort;
    Bits shared_key;  // present iff secure
    Bits message;
    Bits ciphertext;  // present iff secure
    Bits decrypted;   // present iff secure
    bool round_trip_ok = false;
    double density = 0;
    std::uint64_t seed = 0;
    std::size_t attempts = 0;

    bool operator==(const Bb84Trace &) const = default;
};

/// XOR of `data` with the first data.size() bits of `key`.
inline Bits otp_xor(std::span<const Bit> data, std::span<const Bit> key) {
    if (key.size() < data.size()) {
        throw KeyTooShort("one-time pad needs " + std::to_string(data.size()) + " key bits, got " +
                          std::to_string(key.size()));
    }
    Bits out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = data[i] ^ key[i];
    }
    return out;
}

/// UTF-8 bytes expanded most significant bit first.
inline Bits text_to_bits(std::string_view text) {
    Bits out;
    out.reserve(text.size() * 8);
    for (unsigned char c : text) {
        for (int b = 7; b >= 0; --b) {
            out.push_back(static_cast<Bit>((c >> b) & 1U));
        }
    }
    return out;
}

/// Inverse of text_to_bits; trailing bits short of a byte are dropped.
inline std::string bits_to_text(std::span<const Bit> bits) {
    std::string out;
    for (std::size_t i = 0; i + 8 <= bits.size(); i += 8) {
        unsigned char c = 0;
        for (std::size_t b = 0; b < 8; ++b) {
            c = static_cast<unsigned char>((c << 1) | (bits[i + b] & 1U));
        }
        out.push_back(static_cast<char>(c));
    }
    return out;
}

inline std::string bits_string(std::span<const Bit> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

/// One transmission of m qubits followed by sifting and verification. A
/// verification that cannot run (too few sifted bits) yields KeyTooShort.
inline Bb84Trace exchange(std::size_t m, double density, std::uint64_t seed, Comparison mode = Comparison::Half) {
    const ChannelPolicy policy(density);
    Rng rng(seed);
    Sender alice;
    Receiver bob;
    Eavesdropper eve(policy);

    alice.choose_values(m, rng);
    alice.choose_axes(m, rng);
    bob.choose_axes(m, rng);
    for (std::size_t i = 0; i < m; ++i) {
        bob.receive(i, eve.tap(alice.emit(i), rng), rng);
    }

    Bb84Trace t;
    t.transmitted_count = m;
    t.sender_bits = alice.bits();
    t.sender_axes = alice.axes();
    t.eve_actions = eve.actions();
    t.receiver_axes = bob.axes();
    t.receiver_bits = bob.bits();
    t.sifted_positions = sift(alice.axes(), bob.axes());
    t.density = density;
    t.seed = seed;
    t.attempts = 1;

    const Bits a = alice.select(t.sifted_positions);
    const Bits b = bob.select(t.sifted_positions);
    try {
        auto v = verify(a, b, mode);
        t.verdict = v.verdict;
        for (auto idx : v.published) {
            t.published_positions.push_back(t.sifted_positions[idx]);
        }
        if (v.verdict == Verdict::Secure) {
            t.shared_key = std::move(v.remaining_key);
        }
    } catch (const KeyTooShort &) {
        t.verdict = Verdict::KeyTooShort;
    }
    return t;
}

/// Full protocol for a message of L >= 1 bits: transmit oversample_factor * L
/// qubits, sift, verify, then one-time-pad the message with the shared key.
/// A key shorter than L is retried with fresh randomness up to max_retries
/// times before the run is reported as KeyTooShort.
inline Bb84Trace run_protocol(const Bits &message, double density, std::uint64_t seed,
                              const ProtocolConfig &config = {}) {
    if (message.empty()) {
        throw ValidationError("message", "must contain at least one bit");
    }
    if (config.oversample_factor < 1) {
        throw ValidationError("oversample_factor", "must be at least 1");
    }
    ChannelPolicy{density};
    const std::size_t m = config.oversample_factor * message.size();
    Bb84Trace t;
    for (std::size_t attempt = 0; attempt <= config.max_retries; ++attempt) {
        t = exchange(m, density, derive_seed(seed, {attempt}), config.comparison);
        t.attempts = attempt + 1;
        if (t.verdict == Verdict::Secure && t.shared_key.size() < message.size()) {
            t.verdict = Verdict::KeyTooShort;
            t.shared_key.clear();
        }
        if (t.verdict != Verdict::KeyTooShort) {
            break;
        }
    }
    t.seed = seed;
    t.message = message;
    if (t.verdict == Verdict::Secure) {
        t.ciphertext = otp_xor(message, t.shared_key);
        t.decrypted = otp_xor(t.ciphertext, t.shared_key);
        t.round_trip_ok = t.decrypted == message;
    }
    return t;
}

/// Same as run_protocol but checks the backend first: the qubits are 1-qubit
/// circuits, so any registered backend with at least one qubit qualifies.
inline Bb84Trace run_protocol(const Bits &message, double density, const BackendRegistry &backends,
                              const std::string &backend, std::uint64_t seed, const ProtocolConfig &config = {}) {
    if (backends.get(backend).info().max_qubits < 1) {
        throw CapacityError("backend '" + backend + "' cannot hold a single qubit");
    }
    return run_protocol(message, density, seed, config);
}

/// The four eavesdropping cases, classified by whether sender and receiver
/// agree on the axis and which of them the eavesdropper matched.
enum class AttackCase {
    AxesDifferEveMatchesSender,
    AxesDifferEveMatchesReceiver,
    AxesAgreeEveSame,
    AxesAgreeEveOpposite,
};

inline AttackCase classify_attack(Axis sender, Axis receiver, Axis eve) {
    if (sender != receiver) {
        return eve == sender ? AttackCase::AxesDifferEveMatchesSender : AttackCase::AxesDifferEveMatchesReceiver;
    }
    return eve == sender ? AttackCase::AxesAgreeEveSame : AttackCase::AxesAgreeEveOpposite;
}

/// Per-qubit table followed by the verdict and, when secure, the ciphertext.
inline std::string render_trace(const Bb84Trace &t) {
    std::ostringstream out;
    std::vector<bool> sifted(t.transmitted_count), published(t.transmitted_count);
    for (auto p : t.sifted_positions) {
        sifted[p] = true;
    }
    for (auto p : t.published_positions) {
        published[p] = true;
    }
    out << "transmitted qubits: " << t.transmitted_count << "  interception density: " << t.density
        << "  attempts: " << t.attempts << "\n";
    out << "   #  sender  eve     receiver  sifted  published  match\n";
    for (std::size_t i = 0; i < t.transmitted_count; ++i) {
        std::string eve = "-";
        if (t.eve_actions[i]) {
            eve = std::string(1, axis_symbol(t.eve_actions[i]->axis)) + ":" +
                  std::to_string(static_cast<int>(t.eve_actions[i]->result));
        }
        out << std::setw(4) << i << "  " << axis_symbol(t.sender_axes[i]) << ":"
            << static_cast<int>(t.sender_bits[i]) << "     " << std::left << std::setw(6) << eve << std::right
            << "  " << axis_symbol(t.receiver_axes[i]) << ":" << static_cast<int>(t.receiver_bits[i])
            << "       " << (sifted[i] ? "yes" : "no ") << "     " << (published[i] ? "yes" : "no ") << "        "
            << (sifted[i] ? (t.sender_bits[i] == t.receiver_bits[i] ? "=" : "x") : " ") << "\n";
    }
    out << "verdict: " << verdict_name(t.verdict) << "\n";
    if (t.verdict == Verdict::Secure) {
        out << "shared key: " << bits_string(t.shared_key) << "\n";
        out << "message:    " << bits_string(t.message) << "\n";
        out << "ciphertext: " << bits_string(t.ciphertext) << "\n";
        out << "decrypted:  " << bits_string(t.decrypted) << (t.round_trip_ok ? " (matches)" : " (MISMATCH)")
            << "\n";
        if (t.message.size() % 8 == 0) {
            out << "decrypted text: " << bits_to_text(t.decrypted) << "\n";
        }
    }
    return out.str();
}

inline AlgorithmDescriptor descriptor(std::size_t max_message_bytes = 64) {
    AlgorithmDescriptor d;
    d.name = "bb84";
    d.description = "BB84 quantum key distribution with an intercept-resend eavesdropper";
    d.explanation =
        "The sender encodes random bits in random axes, the receiver measures in random axes and both "
        "keep the positions where axes agree. Half of that key is compared in public: any mismatch "
        "reveals the eavesdropper (verdict aborted). Otherwise the other half encrypts the message.";
    d.params = {ParamSpec::text("message", 1, max_message_bytes, "message text to send"),
                ParamSpec::probability("density", "probability that the eavesdropper measures a qubit")};
    d.drive = [](const Params &p, const RunRequest &req) {
        const Bits message = text_to_bits(p.text("message"));
        const double density = p.probability("density");
        AlgorithmResult r;
        if (req.shots == 1) {
            auto t = run_protocol(message, density, req.backends, req.backend, req.seed);
            r.counts.add(verdict_name(t.verdict));
            r.text = render_trace(t);
            return r;
        }
        for (std::uint64_t i = 0; i < req.shots; ++i) {
            auto t = run_protocol(message, density, req.backends, req.backend, derive_seed(req.seed, {i}));
            r.counts.add(verdict_name(t.verdict));
        }
        std::ostringstream out;
        out << "verdicts over " << req.shots << " runs:";
        for (const auto &[k, n] : r.counts) {
            out << " " << k << "=" << n;
        }
        r.text = out.str();
        return r;
    };
    return d;
}

}  // namespace qkit::bb84
