#include "t4c/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "t4c/stitcher.hpp"

namespace t4c {

namespace {

void check_pair(const PredictionTensor& pred, const PredictionTensor& gt) {
    if (!pred.same_shape(gt)) throw Error(ErrorCode::Shape, "prediction and ground truth shapes differ");
    if (pred.scale != gt.scale) throw Error(ErrorCode::Scale, "prediction and ground truth use different scales");
}

void check_pairing(const ChannelPairing& pairing, Index channels) {
    for (auto [v, s] : pairing.pairs) {
        if (v < 0 || s < 0 || v >= channels || s >= channels) throw Error(ErrorCode::Config, "channel pairing out of range");
    }
}

}  // namespace

double mse_uint8(const PredictionTensor& pred, const PredictionTensor& gt) {
    check_pair(pred, gt);
    if (pred.grid.values.size() == 0) throw Error(ErrorCode::Empty, "empty tensors");
    const double scale = pred.scale == Scale::Normalized ? 255.0 : 1.0;
    return ((pred.grid.values - gt.grid.values) * scale).squaredNorm() / static_cast<double>(pred.grid.values.size());
}

EvalReport decompose(const PredictionTensor& pred_in, const PredictionTensor& gt_in, const ChannelPairing& pairing) {
    check_pair(pred_in, gt_in);
    check_pairing(pairing, pred_in.channels);
    const PredictionTensor pred = to_uint8_scale(pred_in);
    const PredictionTensor gt = to_uint8_scale(gt_in);

    EvalReport rep;
    rep.mse_total = mse_uint8(pred, gt);

    double se_volume = 0.0, se_V = 0.0, se_Vbar = 0.0;
    std::size_t n_volume = 0, zeros = 0, zeros_hit = 0;
    for (Index f = 0; f < pred.frames; ++f) {
        for (auto [vch, sch] : pairing.pairs) {
            const auto pv = pred.grid.values.row(f * pred.channels + vch);
            const auto gv = gt.grid.values.row(f * gt.channels + vch);
            const auto ps = pred.grid.values.row(f * pred.channels + sch);
            const auto gs = gt.grid.values.row(f * gt.channels + sch);
            for (Index cell = 0; cell < pv.size(); ++cell) {
                const double dv = pv[cell] - gv[cell];
                const double ds = ps[cell] - gs[cell];
                se_volume += dv * dv;
                ++n_volume;
                if (gv[cell] > 0.0) {
                    se_V += ds * ds;
                    ++rep.count_V;
                } else {
                    se_Vbar += ds * ds;
                    ++rep.count_Vbar;
                    ++zeros;
                    if (quantize_u8_scale(pv[cell]) == 0) ++zeros_hit;
                }
            }
        }
    }
    const std::size_t n_speed = rep.count_V + rep.count_Vbar;
    rep.mse_volume = n_volume ? se_volume / static_cast<double>(n_volume) : 0.0;
    rep.mse_speed = n_speed ? (se_V + se_Vbar) / static_cast<double>(n_speed) : 0.0;
    if (rep.count_V) rep.mse_speed_on_V = se_V / static_cast<double>(rep.count_V);
    if (rep.count_Vbar) rep.mse_speed_on_Vbar = se_Vbar / static_cast<double>(rep.count_Vbar);
    rep.zero_fraction = n_volume ? static_cast<double>(zeros) / static_cast<double>(n_volume) : 0.0;
    if (zeros) rep.zero_recall = static_cast<double>(zeros_hit) / static_cast<double>(zeros);
    return rep;
}

SubstitutionResult substitute_speed_constant(const PredictionTensor& pred, const PredictionTensor& gt, double value,
                                             const ChannelPairing& pairing) {
    check_pair(pred, gt);
    check_pairing(pairing, pred.channels);
    SubstitutionResult res{to_uint8_scale(pred), 0.0, 0.0};
    const PredictionTensor gt_u8 = to_uint8_scale(gt);
    res.mse_before = mse_uint8(res.modified, gt_u8);
    for (Index f = 0; f < res.modified.frames; ++f) {
        for (auto [vch, sch] : pairing.pairs) {
            const auto gv = gt_u8.grid.values.row(f * gt_u8.channels + vch);
            auto ps = res.modified.grid.values.row(f * res.modified.channels + sch);
            for (Index cell = 0; cell < gv.size(); ++cell) {
                if (gv[cell] > 0.0) ps[cell] = value;
            }
        }
    }
    res.mse_after = mse_uint8(res.modified, gt_u8);
    return res;
}

PredictionTensor quantized(const PredictionTensor& p) {
    PredictionTensor out = to_uint8_scale(p);
    out.grid.values = out.grid.values.unaryExpr([](double v) { return static_cast<double>(quantize_u8_scale(v)); });
    return out;
}

std::vector<SweepRow> stride_sweep(const Predictor& predictor, std::span<const FullRasterSample> samples,
                                   const PatchSpec& spec, std::span<const Index> strides) {
    if (samples.empty()) throw Error(ErrorCode::Empty, "stride sweep needs at least one sample");
    for (Index s : strides) {
        if (s < 1 || s > spec.d) {
            throw Error(ErrorCode::Stride, "stride " + std::to_string(s) + " must lie in [1, d=" + std::to_string(spec.d) + "]");
        }
    }
    std::vector<Index> ordered(strides.begin(), strides.end());
    std::sort(ordered.begin(), ordered.end(), std::greater<>());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    std::vector<SweepRow> rows;
    for (Index s : ordered) {
        SweepRow row{s, 0, 0.0};
        for (const auto& sample : samples) {
            const TiledPrediction tiled = predict_tiled(predictor, sample.window, spec, s);
            row.patches = tiled.patches;
            row.mse += mse_uint8(quantized(tiled.prediction), sample.truth);
        }
        row.mse /= static_cast<double>(samples.size());
        rows.push_back(row);
    }
    return rows;
}

void write_report(std::ostream& out, const EvalReport& r) {
    const auto opt = [](const std::optional<double>& v) {
        std::ostringstream s;
        s << std::setprecision(10);
        if (v) s << *v; else s << "absent";
        return s.str();
    };
    out << std::setprecision(10);
    out << "scale=u8\n";
    out << "mse_total=" << r.mse_total << "\n";
    out << "mse_volume=" << r.mse_volume << "\n";
    out << "mse_speed=" << r.mse_speed << "\n";
    out << "mse_speed_on_V=" << opt(r.mse_speed_on_V) << "\n";
    out << "mse_speed_on_Vbar=" << opt(r.mse_speed_on_Vbar) << "\n";
    out << "count_V=" << r.count_V << "\n";
    out << "count_Vbar=" << r.count_Vbar << "\n";
    out << "zero_fraction=" << r.zero_fraction << "\n";
    out << "zero_recall=" << opt(r.zero_recall) << "\n";
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "stride,patches,mse\n" << std::setprecision(12);
    for (const auto& r : rows) out << r.stride << "," << r.patches << "," << r.mse << "\n";
}

}  // namespace t4c
