"""Two-speaker alignment: why the weight matters.

A 15.0 cm vocal tract at 182 Hz pitch against an 18.5 cm tract at 101 Hz,
both saying /a/ (their true length ratio is 1.2333).  Cross-correlating the
raw auditory spectra lets the pitch harmonics drag the peak toward zero
shift; weighting the spectra first recovers the true shift, whose frequency
ratio matches the length ratio.

Run:  python demos/02_two_speaker_alignment.py
"""
import tempfile
from pathlib import Path

import vtlest as v

work = Path(tempfile.mkdtemp(prefix="vtlest_pair_"))
v.make_corpus(v.pair_demo_speakers(), ["a"], work)
corpus = v.load_corpus(work / "manifest.csv")
axis = v.make_axis("erb", 100, 100.0, 8000.0)

short, long_ = corpus.records[0], corpus.records[1]
print(f"speaker A: {short.vtl_cm:.1f} cm tract, F0 {short.f0_hz:.0f} Hz")
print(f"speaker B: {long_.vtl_cm:.1f} cm tract, F0 {long_.f0_hz:.0f} Hz")
true_ratio = long_.vtl_cm / short.vtl_cm
true_shift = (v.hz_to_erbn(2000.0 * true_ratio) - v.hz_to_erbn(2000.0)) / axis.step
print(f"true length ratio {true_ratio:.4f} -> about {true_shift:.1f} channels on the ERB grid\n")

for rep_id, label in (("Ep", "unweighted dB spectra"), ("Ep_SSI", "weighted dB spectra")):
    rep = v.parse_representation(rep_id)
    a = corpus.spectrum("s02", "a", rep, 3.5)  # long tract
    b = corpus.spectrum("s01", "a", rep, 3.5)  # short tract
    shift = v.xcorr_shift(a, b)
    ratio = v.channel_shift_to_ratio(axis, abs(shift), 2000.0)
    print(f"{label:24s}: peak at {shift:+.1f} channels -> ratio {ratio:.3f}")

print("\nThe unweighted peak underestimates the shift because both spectra")
print("carry resolved-harmonic peaks at pitch-determined (not tract-")
print("determined) positions.  After weighting, the peak sits at the true")
print("shift and the converted ratio matches the measured tract lengths.")

spectrum_csv = work / "weighted_spectrum.csv"
v.write_spectrum_csv(spectrum_csv, corpus.spectrum("s01", "a", v.parse_representation("Ep_SSI"), 3.5))
print(f"\nwrote the weighted spectrum for plotting to {spectrum_csv}")
