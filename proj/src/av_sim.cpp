#include "prccsl/av_sim.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <limits>
#include <map>
#include <queue>
#include <random>

#include "prccsl/error.hpp"

namespace prccsl::av {

namespace {

enum Clk : Trace::ClockIndex {
  kMs, kCmrTrig, kCmrOut, kSignTrig, kImIn, kSignOut, kObsDetect, kSpUpdate, kCtrlIn, kCtrlOut,
  kSignIn, kSpeed, kSignType, kDirect, kGear, kTorque, kReqTorq, kReqDirec, kReqGear, kReqBrake,
  kVdIn, kVdOut, kSpOut, kTqOut, kObstc, kVeRun, kVeAcc, kVeBrake, kTLeft, kTRight,
  kTurnLeft, kRightOn, kEmgcy, kStartTurnLeft, kStartTurnRight, kStartBrake, kStop,
  kDetectLeftSign, kDetectRightSign, kDetectStopSign, kClockCount
};

constexpr std::array<Clk, 4> kInputPorts{kSpeed, kDirect, kGear, kTorque};
constexpr std::array<Clk, 4> kRequestPorts{kReqTorq, kReqDirec, kReqGear, kReqBrake};

constexpr std::array<std::string_view, 9> kTargetNames{
    "periodic-R1", "periodic-R2", "periodic-R3", "periodic-R4",
    "exec-R5", "exec-R6", "exec-R7", "exec-R8", "sporadic-R9"};

// Late displacement of a faulty periodic trigger, and overrun past the
// upper execution bound of a faulty stage.
constexpr std::uint64_t kMaxDisplacement = 10;
constexpr std::uint64_t kMaxOverrun = 15;
constexpr std::uint64_t kMaxCameraOverrun = 10;
constexpr std::int64_t kMaxVelocity = 30;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One independent generator per stochastic source.
class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view name) {
    const std::uint64_t h = fnv1a(name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    eng_.seed(seq);
  }

  // Uniform on [lo, hi] by rejection; std::uniform_int_distribution is not
  // portable across standard libraries.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return eng_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + x % range;
  }

  // Empty window (lo > hi) collapses to lo without a draw.
  std::uint64_t pick(std::uint64_t lo, std::uint64_t hi) { return lo > hi ? lo : uniform(lo, hi); }

  bool bernoulli(double p) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::mt19937_64 eng_;
};

enum class Sign { kNone, kLeft, kRight, kStop, kSpeedUp, kSlowDown };
enum class Substate { kAcc, kDec, kStop, kTurnLeft, kTurnRight };
enum class Mode { kNormal, kEmergency };

enum class Ev {
  kCameraTrigger, kSignTrigger, kObstacleScan, kSpeedUpdate,
  kCameraOut, kSignOut, kInput, kCtrlOut, kRequest, kVdOut, kStop
};

struct Event {
  StepIndex at;
  int phase;
  std::uint64_t seq;
  Ev kind;
  std::uint64_t frame;
  Clk port;

  bool operator>(const Event& o) const {
    if (at != o.at) return at > o.at;
    if (phase != o.phase) return phase > o.phase;
    return seq > o.seq;
  }
};

struct Frame {
  StepIndex trigger = 0;
  StepIndex ctrl_in = 0;
  Sign sign = Sign::kNone;
  bool detected = false;
};

std::uint64_t ge(std::uint64_t a, std::uint64_t b) { return std::max(a, b); }

}  // namespace

void AVParams::validate() const {
  const auto check = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("invalid simulator parameter: ") + what);
  };
  check(camera_period > 0 && sign_rec_period > 0 && obstacle_period > 0 && speed_period > 0,
        "periods must be positive");
  for (const Interval* i : {&exec_camera, &exec_sign_rec, &exec_controller, &exec_vehicle}) {
    check(i->lo <= i->hi, "execution interval is empty");
    check(i->lo > 0, "execution latency must be positive");
  }
  check(w_cmr == exec_camera.hi && w_sr == exec_sign_rec.hi && w_ctrl == exec_controller.hi &&
            w_vd == exec_vehicle.hi,
        "worst-case latencies must equal the execution upper bounds");
  check(exec_camera.hi < camera_period, "camera latency must be below the camera period");
  check(exec_camera.lo + exec_sign_rec.lo + 1 < w_cmr + w_sr, "camera/sign window is empty");
  check(exec_controller.lo + exec_vehicle.lo + 1 < w_ctrl + w_vd, "controller/vehicle window is empty");
  check(w_ctrl + w_vd < action_deadline, "action deadline shorter than the pipeline");
  check(w_ctrl + w_vd < stop_deadline, "stop deadline shorter than the pipeline");
  check(sporadic_dwell > 0, "sporadic dwell must be positive");
  check(obstacle_prob >= 0.0 && obstacle_prob <= 1.0, "obstacle probability outside [0, 1]");
}

std::string_view target_name(FaultTarget target) noexcept {
  return kTargetNames[static_cast<std::size_t>(target)];
}

FaultSpec FaultSpec::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("fault must look like TARGET:RATE, got '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string rate_text(text.substr(colon + 1));
  FaultSpec spec;
  const auto it = std::find(kTargetNames.begin(), kTargetNames.end(), name);
  if (it == kTargetNames.end()) throw ValidationError("unknown fault target '" + std::string(name) + "'");
  spec.target = static_cast<FaultTarget>(it - kTargetNames.begin());
  std::size_t used = 0;
  try {
    spec.rate = std::stod(rate_text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != rate_text.size() || !(spec.rate >= 0.0 && spec.rate <= 1.0)) {
    throw ValidationError("fault rate must be a number in [0, 1], got '" + rate_text + "'");
  }
  return spec;
}

std::string FaultSpec::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rate);
  return std::string(target_name(target)) + ":" + buf;
}

const std::vector<std::string>& alphabet() {
  static const std::vector<std::string> names{
      "ms", "cmrTrig", "cmrOut", "signTrig", "imIn", "signOut", "obsDetect", "spUpdate", "ctrlIn",
      "ctrlOut", "signIn", "speed", "signType", "direct", "gear", "torque", "reqTorq", "reqDirec",
      "reqGear", "reqBrake", "vdIn", "vdOut", "spOut", "tqOut", "obstc", "veRun", "veAcc", "veBrake",
      "tLeft", "tRight", "turnLeft", "rightOn", "emgcy", "startTurnLeft", "startTurnRight",
      "startBrake", "Stop", "DetectLeftSign", "DetectRightSign", "DetectStopSign"};
  return names;
}

struct Simulator::Impl {
  AVParams p;
  std::optional<FaultSpec> fault;

  Stream camera, sign_rec, controller, ports, vehicle, signs, obstacles, velocity_rng, fault_rng;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> calendar;
  std::uint64_t seq = 0;
  std::map<std::uint64_t, Frame> frames;

  StepIndex step = 0;
  std::array<char, kClockCount> ticks{};

  Mode mode = Mode::kNormal;
  Substate substate = Substate::kAcc;
  Substate pending = Substate::kAcc;
  StepIndex exit_at = 0;
  std::int64_t velocity = 10;

  // Last emission of each order-preserving stage.
  StepIndex last_im_in = 0, last_sign_out = 0, last_ctrl_out = 0, last_vd_out = 0, last_stop = 0;
  std::array<StepIndex, 4> last_input{}, last_request{};
  bool any_im_in = false, any_sign_out = false, any_ctrl_out = false, any_vd_out = false,
       any_stop = false;
  std::array<bool, 4> any_input{}, any_request{};

  Impl(const AVParams& params, std::optional<FaultSpec> f)
      : p(params),
        fault(f),
        camera(params.seed, "camera"),
        sign_rec(params.seed, "sign-recognition"),
        controller(params.seed, "controller"),
        ports(params.seed, "ports"),
        vehicle(params.seed, "vehicle-dynamics"),
        signs(params.seed, "signs"),
        obstacles(params.seed, "obstacles"),
        velocity_rng(params.seed, "velocity"),
        fault_rng(params.seed, "fault") {
    p.validate();
  }

  bool faulty(FaultTarget t) {
    if (!fault || fault->target != t) return false;
    return fault_rng.bernoulli(fault->rate);
  }

  void emit(Clk c) { ticks[c] = 1; }

  void schedule(StepIndex at, Ev kind, std::uint64_t frame = 0, Clk port = kMs) {
    const int phase = kind <= Ev::kSpeedUpdate ? 0 : 1;
    calendar.push(Event{at, phase, seq++, kind, frame, port});
  }

  static StepIndex after(bool any, StepIndex last) { return any ? last + 1 : 0; }

  void periodic(std::uint64_t period, Ev kind, FaultTarget target) {
    if (step % period != 0) return;
    StepIndex at = step;
    if (faulty(target)) at += fault_rng.uniform(1, kMaxDisplacement);
    schedule(at, kind, step / period);
  }

  void activate(Substate s) {
    if (mode == Mode::kEmergency) {
      pending = s;
      return;
    }
    substate = s;
    if (s == Substate::kTurnLeft) emit(kTurnLeft);
    if (s == Substate::kTurnRight) emit(kRightOn);
  }

  void handle(const Event& e) {
    const StepIndex s = step;
    switch (e.kind) {
      case Ev::kCameraTrigger: {
        emit(kCmrTrig);
        frames[e.frame].trigger = s;
        std::uint64_t c = camera.uniform(p.exec_camera.lo, p.exec_camera.hi);
        if (faulty(FaultTarget::kExecR6)) c = p.exec_camera.hi + fault_rng.uniform(1, kMaxCameraOverrun);
        last_im_in = ge(s + c, after(any_im_in, last_im_in));
        any_im_in = true;
        schedule(last_im_in, Ev::kCameraOut, e.frame);
        break;
      }
      case Ev::kCameraOut: {
        emit(kCmrOut);
        emit(kImIn);
        const Frame& f = frames[e.frame];
        // Keep trigger -> signOut strictly inside (lo sums, worst-case sums).
        const StepIndex lo = std::max({s + p.exec_sign_rec.lo,
                                       f.trigger + p.exec_camera.lo + p.exec_sign_rec.lo + 1,
                                       after(any_sign_out, last_sign_out)});
        const StepIndex hi = std::min(s + p.exec_sign_rec.hi, f.trigger + p.w_cmr + p.w_sr - 1);
        StepIndex t = sign_rec.pick(lo, hi);
        if (faulty(FaultTarget::kExecR5)) {
          t = ge(s + p.exec_sign_rec.hi + fault_rng.uniform(1, kMaxOverrun), after(any_sign_out, last_sign_out));
        }
        last_sign_out = t;
        any_sign_out = true;
        schedule(t, Ev::kSignOut, e.frame);
        break;
      }
      case Ev::kSignOut: {
        emit(kSignOut);
        emit(kSignIn);
        emit(kSignType);
        emit(kCtrlIn);
        Frame& f = frames[e.frame];
        f.ctrl_in = s;
        f.sign = static_cast<Sign>(signs.uniform(0, 5));
        if (mode == Mode::kNormal && f.sign != Sign::kNone) {
          f.detected = true;
          if (f.sign == Sign::kLeft) emit(kDetectLeftSign);
          if (f.sign == Sign::kRight) emit(kDetectRightSign);
          if (f.sign == Sign::kStop) emit(kDetectStopSign);
        }
        for (std::size_t i = 0; i < kInputPorts.size(); ++i) {
          const StepIndex t = ports.pick(ge(s, after(any_input[i], last_input[i])), s + p.input_window);
          last_input[i] = t;
          any_input[i] = true;
          if (t == s) {
            emit(kInputPorts[i]);
          } else {
            schedule(t, Ev::kInput, e.frame, kInputPorts[i]);
          }
        }
        StepIndex t = controller.pick(ge(s + p.exec_controller.lo, after(any_ctrl_out, last_ctrl_out)),
                                      s + p.exec_controller.hi);
        if (faulty(FaultTarget::kExecR7)) {
          t = ge(s + p.exec_controller.hi + fault_rng.uniform(1, kMaxOverrun), after(any_ctrl_out, last_ctrl_out));
        }
        last_ctrl_out = t;
        any_ctrl_out = true;
        schedule(t, Ev::kCtrlOut, e.frame);
        break;
      }
      case Ev::kInput:
      case Ev::kRequest:
        emit(e.port);
        break;
      case Ev::kCtrlOut: {
        emit(kCtrlOut);
        emit(kVdIn);
        const Frame& f = frames[e.frame];
        for (std::size_t i = 0; i < kRequestPorts.size(); ++i) {
          const StepIndex t = ports.pick(ge(s, after(any_request[i], last_request[i])), s + p.request_window);
          last_request[i] = t;
          any_request[i] = true;
          if (t == s) {
            emit(kRequestPorts[i]);
          } else {
            schedule(t, Ev::kRequest, e.frame, kRequestPorts[i]);
          }
        }
        // Keep ctrlIn -> vdOut strictly inside (lo sums, worst-case sums).
        const StepIndex lo = std::max({s + p.exec_vehicle.lo,
                                       f.ctrl_in + p.exec_controller.lo + p.exec_vehicle.lo + 1,
                                       after(any_vd_out, last_vd_out)});
        const StepIndex hi = std::min(s + p.exec_vehicle.hi, f.ctrl_in + p.w_ctrl + p.w_vd - 1);
        StepIndex t = vehicle.pick(lo, hi);
        if (faulty(FaultTarget::kExecR8)) {
          t = ge(s + p.exec_vehicle.hi + fault_rng.uniform(1, kMaxOverrun), after(any_vd_out, last_vd_out));
        }
        last_vd_out = t;
        any_vd_out = true;
        schedule(t, Ev::kVdOut, e.frame);
        break;
      }
      case Ev::kVdOut: {
        emit(kVdOut);
        emit(kSpOut);
        emit(kTqOut);
        const auto it = frames.find(e.frame);
        const Frame f = it->second;
        frames.erase(it);
        if (!f.detected) break;
        switch (f.sign) {
          case Sign::kLeft:
            emit(kStartTurnLeft);
            activate(Substate::kTurnLeft);
            break;
          case Sign::kRight:
            emit(kStartTurnRight);
            activate(Substate::kTurnRight);
            break;
          case Sign::kStop: {
            emit(kStartBrake);
            // Braking distance grows with speed; capped so the stop still
            // lands inside its deadline after the worst-case pipeline.
            const std::uint64_t cap = p.stop_deadline - p.w_ctrl - p.w_vd - 1;
            const std::uint64_t b = std::min<std::uint64_t>(100 + 50 * static_cast<std::uint64_t>(velocity), cap);
            last_stop = ge(s + b, after(any_stop, last_stop));
            any_stop = true;
            schedule(last_stop, Ev::kStop, e.frame);
            activate(Substate::kStop);
            break;
          }
          case Sign::kSpeedUp:
            activate(Substate::kAcc);
            break;
          case Sign::kSlowDown:
            activate(Substate::kDec);
            break;
          case Sign::kNone:
            break;
        }
        break;
      }
      case Ev::kStop:
        emit(kStop);
        velocity = 0;
        break;
      case Ev::kSignTrigger:
        emit(kSignTrig);
        break;
      case Ev::kObstacleScan:
        emit(kObsDetect);
        if (obstacles.bernoulli(p.obstacle_prob)) {
          emit(kObstc);
          emit(kEmgcy);
          emit(kVeBrake);
          if (mode == Mode::kNormal) pending = substate;
          mode = Mode::kEmergency;
          exit_at = s + p.sporadic_dwell + 1;
          if (faulty(FaultTarget::kSporadicR9)) exit_at = s + fault_rng.uniform(1, p.sporadic_dwell);
        }
        break;
      case Ev::kSpeedUpdate: {
        emit(kSpUpdate);
        const auto j = static_cast<std::int64_t>(velocity_rng.uniform(0, p.speed_jitter));
        if (mode == Mode::kEmergency || substate == Substate::kDec || substate == Substate::kStop) {
          velocity -= j;
        } else if (substate == Substate::kAcc) {
          velocity += j;
        } else {
          velocity += j - static_cast<std::int64_t>(p.speed_jitter / 2);
        }
        velocity = std::clamp<std::int64_t>(velocity, 0, kMaxVelocity);
        break;
      }
    }
  }

  void leave_emergency() {
    mode = Mode::kNormal;
    substate = pending;
    emit(kVeRun);
    switch (substate) {
      case Substate::kAcc:
        emit(kVeAcc);
        break;
      case Substate::kTurnLeft:
        emit(kTLeft);
        emit(kTurnLeft);
        break;
      case Substate::kTurnRight:
        emit(kTRight);
        emit(kRightOn);
        break;
      default:
        break;
    }
  }

  void run_step(std::vector<Trace::ClockIndex>& out) {
    ticks.fill(0);
    emit(kMs);
    periodic(p.camera_period, Ev::kCameraTrigger, FaultTarget::kPeriodicR1);
    periodic(p.sign_rec_period, Ev::kSignTrigger, FaultTarget::kPeriodicR2);
    periodic(p.obstacle_period, Ev::kObstacleScan, FaultTarget::kPeriodicR3);
    periodic(p.speed_period, Ev::kSpeedUpdate, FaultTarget::kPeriodicR4);
    while (!calendar.empty() && calendar.top().at == step) {
      const Event e = calendar.top();
      calendar.pop();
      handle(e);
    }
    if (mode == Mode::kEmergency && step == exit_at) leave_emergency();
    out.clear();
    for (Trace::ClockIndex c = 0; c < kClockCount; ++c) {
      if (ticks[c]) out.push_back(c);
    }
    ++step;
  }
};

Simulator::Simulator(const AVParams& params, std::optional<FaultSpec> fault)
    : impl_(std::make_unique<Impl>(params, fault)) {}

Simulator::~Simulator() = default;

StepIndex Simulator::step() const noexcept { return impl_->step; }
bool Simulator::done() const noexcept { return impl_->step >= impl_->p.steps; }

bool Simulator::next(std::vector<Trace::ClockIndex>& ticking) {
  if (done()) return false;
  impl_->run_step(ticking);
  return true;
}

namespace {

Trace run(Simulator& sim) {
  std::vector<ClockId> ids;
  for (const auto& c : alphabet()) ids.emplace_back(c);
  Trace trace(ids);
  std::vector<Trace::ClockIndex> ticking;
  while (sim.next(ticking)) trace.append_step(ticking);
  return trace;
}

}  // namespace

Trace simulate(const AVParams& params) {
  Simulator sim(params);
  return run(sim);
}

Trace simulate_faulty(const AVParams& params, const FaultSpec& fault) {
  Simulator sim(params, fault);
  return run(sim);
}

}  // namespace prccsl::av
