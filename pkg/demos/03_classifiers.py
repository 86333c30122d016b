# The three classifiers behind one contract: train_* / predict /
# predict_proba.  All are built from scratch on numpy: the SVM trains by
# dual coordinate descent, the network by mini-batch gradient descent, the
# trees by exact greedy Newton boosting.

import tempfile
from pathlib import Path

import numpy as np

from emofuse import (
    GbtConfig,
    MlpConfig,
    SvmConfig,
    TrainConfig,
    load_model,
    mlp_grad_check,
    predict,
    predict_proba,
    save_model,
    train_gbt,
    train_mlp,
    train_svm,
)

rng = np.random.default_rng(1)

# Four Gaussian blobs in 6-D.
centers = rng.normal(scale=4.0, size=(4, 6))
X = np.vstack([rng.normal(centers[c], 1.0, size=(50, 6)) for c in range(4)])
y = np.repeat(np.arange(4), 50)

cfg = TrainConfig(
    seed=0,
    svm=SvmConfig(c_penalty=1.0, tolerance=1e-4),
    mlp=MlpConfig(hidden_width=64, learning_rate=0.05, epochs=60),
    gbt=GbtConfig(rounds=25, max_depth=3, shrinkage=0.2),
)

models = {
    "svm": train_svm(X, y, cfg),
    "mlp": train_mlp(X, y, cfg),
    "gbt": train_gbt(X, y, cfg),
}

for kind, model in models.items():
    acc = (predict(model, X) == y).mean()
    probs = predict_proba(model, X[:1])
    print(f"{kind}: training accuracy {acc:.3f}, "
          f"p(x0) = {np.round(probs[0], 3)} (sums to {probs[0].sum():.6f})")

# The network's backprop is verified against central finite differences.
stride = slice(None, None, 25)  # a few rows of every class
check_model = train_mlp(
    X[stride], y[stride], TrainConfig(seed=5, mlp=MlpConfig(hidden_width=16, epochs=0))
)
err = mlp_grad_check(check_model, X[stride][:6], y[stride][:6])
print(f"\nMLP gradient check, max relative error: {err:.2e}")

# The boosted ensemble's training loss is monotone per round.
losses = models["gbt"].loss_history
print(f"GBT loss round 1 -> {len(losses)}: {losses[0]:.4f} -> {losses[-1]:.4f}, "
      f"monotone={all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))}")

# Models serialize to the MDL1 container (f32 parameters) for fold caching.
workdir = Path(tempfile.mkdtemp(prefix="emofuse_demo_"))
for kind, model in models.items():
    path = workdir / f"{kind}.mdl"
    save_model(model, path)
    same = np.array_equal(predict(load_model(path), X), predict(model, X))
    print(f"{kind} MDL1 round trip: {path.stat().st_size} bytes, predictions equal={same}")
