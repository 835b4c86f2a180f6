"""One-shot generator for the shipped per-exercise feature config files."""

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "src" / "rehabeval" / "configs"

REVIEW_NOTE = (
    "Joint mapping is a reviewable clinical assumption; adjust joint_refs here, "
    "no code change needed."
)


def ja(name, refs, **kw):
    d = {"name": name, "primitive": "JointAngle", "joint_refs": refs, "units": "degrees"}
    d.update(kw)
    return d


def sva(name, base, tip):
    return {"name": name, "primitive": "SegmentVerticalAngle", "joint_refs": [base, tip], "units": "degrees"}


def stab(name, inner):
    return {"name": name, "primitive": "StabilityRange", "joint_refs": [], "units": inner["units"], "inner": inner}


def tilt(name, left, right):
    return {"name": name, "primitive": "PelvicTilt", "joint_refs": [left, right], "units": "degrees"}


def hdist(name, a, b):
    return {"name": name, "primitive": "HorizontalDistance", "joint_refs": [a, b], "units": "meters"}


def vdisp(name, joint):
    return {"name": name, "primitive": "VerticalDisplacement", "joint_refs": [joint], "units": "meters"}


def sym(name, a, b):
    return {"name": name, "primitive": "PairSymmetry", "joint_refs": [a, b], "units": "meters"}


def pdev(name, tracked, p1, p2, p3):
    return {"name": name, "primitive": "PlaneDeviation", "joint_refs": [tracked, p1, p2, p3], "units": "meters"}


U_TRUNK = sva("Trunk Inclination A.", "waist", "chest")
U_HIPFLEX = ja("Hip Flexion A.", ["chest", "ACTIVE:upper_leg", "ACTIVE:lower_leg"])
U_KNEE = ["ACTIVE:upper_leg", "ACTIVE:lower_leg", "ACTIVE:foot"]
U_PELVIC_STAB = stab("Pelvic Stability", tilt("pelvic tilt", "left_upper_leg", "right_upper_leg"))

R_TRUNK = lambda name: sva(name, "pelvis", "spine_upper")
R_KNEE = ["ACTIVE:hip", "ACTIVE:knee", "ACTIVE:ankle"]
R_ELBOW = ["ACTIVE:shoulder", "ACTIVE:elbow", "ACTIVE:wrist"]
R_PELVIC_STAB = stab("Pelvic Stability", tilt("pelvic tilt", "left_hip", "right_hip"))

CONFIGS = {
    "uiprmd": {
        "m01": ("deep squat", [
            ja("Knee Flexion A.", U_KNEE),
            U_HIPFLEX,
            U_TRUNK,
        ], ["Reference guideline (not enforced): insufficient squat depth or trunk lean beyond 30 degrees suggests a non-optimal repetition."]),
        "m02": ("hurdle step", [
            U_TRUNK,
            U_HIPFLEX,
            vdisp("Leg Height", "ACTIVE:foot"),
        ], []),
        "m03": ("inline lunge", [
            ja("Front Knee A.", U_KNEE),
            ja("Back Knee A.", ["PASSIVE:upper_leg", "PASSIVE:lower_leg", "PASSIVE:foot"]),
            U_TRUNK,
            hdist("Foot Distance", "left_foot", "right_foot"),
        ], []),
        "m04": ("side lunge", [
            ja("Knee Valgus A.", U_KNEE, deviation_from_straight=True),
            sva("Thigh A.", "ACTIVE:upper_leg", "ACTIVE:lower_leg"),
            U_PELVIC_STAB,
        ], ["Reference guideline (not enforced): pelvic tilt range above 5 degrees, trunk lean beyond 30 degrees or thigh angle beyond 45 degrees suggests a non-optimal side lunge."]),
        "m05": ("sit to stand", [
            U_TRUNK,
            U_HIPFLEX,
            U_PELVIC_STAB,
        ], []),
        "m06": ("active straight leg raise", [
            U_HIPFLEX,
            sva("Leg Elevation A.", "ACTIVE:upper_leg", "ACTIVE:foot"),
            U_PELVIC_STAB,
        ], []),
        "m07": ("shoulder abduction", [
            sva("Arm Elevation A.", "ACTIVE:upper_arm", "ACTIVE:forearm"),
            ja("Elbow Flexion A.", ["ACTIVE:upper_arm", "ACTIVE:forearm", "ACTIVE:hand"]),
            sva("Torso Inclination A.", "waist", "chest"),
        ], []),
        "m08": ("shoulder extension", [
            ja("Shoulder Extension A.", ["chest", "ACTIVE:upper_arm", "ACTIVE:forearm"]),
            stab("Head Neutral Position", sva("head pitch", "neck", "head")),
            U_TRUNK,
        ], []),
        "m09": ("shoulder internal-external rotation", [
            sva("Arm Internal Rotation A.", "ACTIVE:forearm", "ACTIVE:hand"),
            ja("Arm External Rotation A.", ["waist", "ACTIVE:forearm", "ACTIVE:hand"]),
            ja("Elbow Flexion A.", ["ACTIVE:upper_arm", "ACTIVE:forearm", "ACTIVE:hand"]),
        ], ["Rotation proxies use the forearm direction; a segment-frame definition would need sensor orientations that position data does not carry."]),
        "m10": ("shoulder scaption", [
            sva("Arm Elevation A.", "ACTIVE:upper_arm", "ACTIVE:forearm"),
            U_TRUNK,
            pdev("Arm Plane Deviation", "ACTIVE:hand", "ACTIVE:upper_arm", "PASSIVE:upper_arm", "waist"),
        ], []),
    },
    "rehab24_6": {
        "ex1": ("arm abduction", [
            sva("Arm Elevation A.", "ACTIVE:shoulder", "ACTIVE:elbow"),
            R_TRUNK("Trunk Inclination A."),
            ja("Elbow A.", R_ELBOW),
            pdev("Plane Deviation", "ACTIVE:wrist", "left_shoulder", "right_shoulder", "pelvis"),
        ], []),
        "ex2": ("arm VW", [
            ja("V-Shape A. (shoulder)", ["spine_upper", "ACTIVE:shoulder", "ACTIVE:elbow"]),
            ja("W-Shape A. (elbow)", R_ELBOW),
            R_TRUNK("Trunk to Vertical A."),
        ], []),
        "ex3": ("inclined push-ups", [
            ja("Elbow Flexion A.", R_ELBOW),
            R_TRUNK("Trunk Inclination A."),
            sym("Hand Symmetry", "left_hand", "right_hand"),
            R_PELVIC_STAB,
        ], []),
        "ex4": ("leg abduction", [
            sva("Leg Elevation A.", "ACTIVE:hip", "ACTIVE:ankle"),
            R_TRUNK("Trunk A."),
            tilt("Pelvic Tilt A.", "left_hip", "right_hip"),
            ja("Knee A.", R_KNEE),
            pdev("Leg Plane Deviation", "ACTIVE:ankle", "left_hip", "right_hip", "spine_upper"),
        ], []),
        "ex5": ("leg lunge", [
            ja("Front Knee A.", R_KNEE),
            ja("Back Knee A.", ["PASSIVE:hip", "PASSIVE:knee", "PASSIVE:ankle"]),
            R_TRUNK("Trunk A."),
            hdist("Foot Distance", "left_foot", "right_foot"),
        ], []),
        "ex6": ("squats", [
            ja("Knee Flexion A.", R_KNEE),
            ja("Hip Flexion A.", ["spine_upper", "ACTIVE:hip", "ACTIVE:knee"]),
            R_TRUNK("Trunk A."),
            sym("Foot Symmetry", "left_foot", "right_foot"),
        ], []),
    },
}


def main():
    for dataset, exercises in CONFIGS.items():
        out_dir = ROOT / dataset
        out_dir.mkdir(parents=True, exist_ok=True)
        for exercise_id, (display, features, extra_notes) in exercises.items():
            record = {
                "exercise_id": exercise_id,
                "dataset_id": dataset,
                "exercise_name": display,
                "features": features,
                "notes": [REVIEW_NOTE] + extra_notes,
            }
            path = out_dir / f"{exercise_id}.json"
            path.write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
            print("wrote", path)


if __name__ == "__main__":
    main()
