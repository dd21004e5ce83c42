#pragma once

// Seeded discrete-event model of a traffic-sign-recognition vehicle.
//
// Each 50 ms camera frame flows through a fixed pipeline:
//
//   cmrTrig -> cmrOut/imIn -> signOut/signIn/ctrlIn -> ctrlOut/vdIn -> vdOut
//
// with every stage latency drawn uniformly inside its execution interval.
// Stage outputs are kept in frame order, so the n-th tick of every pipeline
// clock belongs to frame n. An obstacle detector running every 40 ms can
// put the controller into Emergency mode for a dwell of 500 ms.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prccsl/clock.hpp"

namespace prccsl::av {

struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

struct AVParams {
  std::uint64_t camera_period = 50;
  std::uint64_t sign_rec_period = 200;
  std::uint64_t obstacle_period = 40;
  std::uint64_t speed_period = 30;

  Interval exec_camera{20, 30};
  Interval exec_sign_rec{100, 150};
  Interval exec_controller{100, 150};
  Interval exec_vehicle{50, 100};

  // Worst-case stage latencies.
  std::uint64_t w_cmr = 30;
  std::uint64_t w_sr = 150;
  std::uint64_t w_ctrl = 150;
  std::uint64_t w_vd = 100;

  std::uint64_t sporadic_dwell = 500;
  // Spread of the controller input ports after ctrlIn, and of the request
  // ports after ctrlOut.
  std::uint64_t input_window = 40;
  std::uint64_t request_window = 30;
  // Upper bound on detect -> action latencies.
  std::uint64_t action_deadline = 500;
  std::uint64_t stop_deadline = 3000;

  double obstacle_prob = 0.05;
  std::uint64_t speed_jitter = 2;

  std::uint64_t seed = 42;
  std::uint64_t steps = 60000;

  /// Throws ValidationError when a field is out of its domain.
  void validate() const;
};

enum class FaultTarget {
  kPeriodicR1, kPeriodicR2, kPeriodicR3, kPeriodicR4,
  kExecR5, kExecR6, kExecR7, kExecR8,
  kSporadicR9,
};

struct FaultSpec {
  FaultTarget target = FaultTarget::kPeriodicR1;
  double rate = 0.0;

  /// "periodic-R1:0.10". Throws ValidationError on an unknown target or a
  /// rate outside [0, 1].
  static FaultSpec parse(std::string_view text);
  std::string to_string() const;
};

std::string_view target_name(FaultTarget target) noexcept;

/// The emitted clock alphabet, `ms` first.
const std::vector<std::string>& alphabet();

/// Step generator. Single owner; emits one step per next() call.
class Simulator {
 public:
  explicit Simulator(const AVParams& params, std::optional<FaultSpec> fault = std::nullopt);
  ~Simulator();

  const std::vector<std::string>& clocks() const { return alphabet(); }
  StepIndex step() const noexcept;
  bool done() const noexcept;

  /// Fills `ticking` with the sorted alphabet indices of the next step.
  /// Returns false once `steps` steps have been produced.
  bool next(std::vector<Trace::ClockIndex>& ticking);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trace simulate(const AVParams& params);
Trace simulate_faulty(const AVParams& params, const FaultSpec& fault);

}  // namespace prccsl::av
