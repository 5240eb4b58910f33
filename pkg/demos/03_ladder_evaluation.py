"""Estimating lengths for a whole corpus with known ground truth.

Synthesizes the default eight-speaker ladder (tract scale factors 0.80-1.25
paired with pitches 100-220 Hz, five vowels each), runs the full estimation
pipeline for several spectral representations, and compares their accuracy.
Finishes with seeded random-exclusion trials that probe estimation
stability.

Run:  python demos/03_ladder_evaluation.py      (takes ~30 s)
"""
import tempfile
from pathlib import Path

import numpy as np

import vtlest as v

work = Path(tempfile.mkdtemp(prefix="vtlest_ladder_"))
v.make_corpus(v.default_speakers(), list("aiueo"), work)
corpus = v.load_corpus(work / "manifest.csv")
print(f"corpus: {len(corpus.records)} utterances, "
      f"true lengths {min(corpus.measured_vtl.values()):.1f}-"
      f"{max(corpus.measured_vtl.values()):.1f} cm\n")

print(f"{'representation':14s} {'r (all)':>8s} {'RMS cm':>8s} {'q':>9s}")
for rep_id in ("Ep", "Ep_SSI", "F_log", "F_SSI_log", "M_log", "M_SSI_log"):
    report = v.evaluate_representation(corpus, rep_id, 3.5)
    print(f"{rep_id:14s} {report.all_r:8.4f} {report.rms_cm:8.3f} {report.q:9.5f}")

print("\nper-vowel correlation for the weighted auditory spectrum:")
report = v.evaluate_representation(corpus, "Ep_SSI", 3.5)
for vowel, r in report.per_vowel_r.items():
    print(f"  /{vowel}/: r = {r:.4f}")

print("\nper-speaker estimates (weighted auditory spectrum, vowel average):")
result = corpus.estimate("Ep_SSI", 3.5)
means = result.speaker_mean_lengths()
for speaker in corpus.speakers:
    true = corpus.measured_vtl[speaker]
    print(f"  {speaker}: estimated {means[speaker]:5.2f} cm, true {true:5.2f} cm")

print("\nstability: drop 3 random speakers, re-estimate, repeat 10 times")
trials = v.exclusion_trials(corpus, "Ep_SSI", k=3, trials=10, seed=0, h_max=3.5)
print(f"  RMS over trials: {trials.mean_rms:.3f} +- {trials.std_rms:.3f} cm")
