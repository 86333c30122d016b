# The six fusion strategies: {early, late} x {concat, sum, product}.
# Early fusion combines representation vectors; late fusion combines
# per-class probability vectors produced by unimodal models.

import numpy as np

from emofuse import ALL_STRATEGIES, FusionOperator, early_fuse, late_fuse

rng = np.random.default_rng(0)

print("the experiment grid:")
for strategy in ALL_STRATEGIES:
    print("  ", strategy.name)
print()

# --- early fusion on 768-dim representation vectors ------------------------
text, speech, video = (rng.normal(size=768) for _ in range(3))

concat = early_fuse(text, speech, video, FusionOperator.CONCAT)
summed = early_fuse(text, speech, video, FusionOperator.SUM)
product = early_fuse(text, speech, video, FusionOperator.PRODUCT)
print("early concat dim:", concat.values.shape[0], "(768 per modality)")
print("early sum dim:   ", summed.values.shape[0])
print("early product dim:", product.values.shape[0])

# Concatenation order is fixed text -> speech -> video:
assert np.array_equal(concat.values[:768], text)

# Sum and product do not care about modality order (bitwise):
assert np.array_equal(
    early_fuse(video, text, speech, FusionOperator.SUM).values, summed.values
)
print("sum is permutation-invariant: True")
print()

# --- late fusion on class-probability vectors -------------------------------
t_prob = np.array([0.70, 0.10, 0.10, 0.10])   # text model: confident "angry"
s_prob = np.array([0.10, 0.70, 0.10, 0.10])   # speech model disagrees
v_prob = np.array([0.25, 0.25, 0.25, 0.25])   # video model is clueless

for op in FusionOperator:
    fused = late_fuse(t_prob, s_prob, v_prob, op)
    print(f"late {op.value:8s} -> dim {fused.values.shape[0]}: "
          f"{np.round(fused.values, 4)}")

# The sum/product outputs are deliberately NOT renormalized; the downstream
# classifier consumes them as plain feature vectors.
