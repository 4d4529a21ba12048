// Landmark layout shared with the engine: each frame is one flat array of
// alternating x/y coordinates, pose first, then left hand, then right hand,
// zero-padded up to the configured landmark count. Parts the detector did
// not find are zero-filled in place, so offsets never shift.

export interface LandmarkPoint {
  x: number;
  y: number;
}

export interface LandmarkSet {
  pose: readonly LandmarkPoint[] | null;
  leftHand: readonly LandmarkPoint[] | null;
  rightHand: readonly LandmarkPoint[] | null;
}

export const POSE_POINTS = 33;
export const HAND_POINTS = 21;
export const DETECTED_POINTS = POSE_POINTS + 2 * HAND_POINTS;
export const DEFAULT_LANDMARK_COUNT = 129;

function fill(
  out: number[],
  offset: number,
  points: readonly LandmarkPoint[] | null,
  expected: number,
  part: string,
): void {
  if (points === null) return; // stays zero
  if (points.length !== expected) {
    throw new Error(
      `${part}: expected ${expected} landmarks, got ${points.length}`,
    );
  }
  for (let i = 0; i < expected; i++) {
    const p = points[i]!;
    out[offset + 2 * i] = p.x;
    out[offset + 2 * i + 1] = p.y;
  }
}

/**
 * Flatten a detected landmark set to the wire layout: 2 * landmarkCount
 * numbers, alternating x and y. Missing parts (hand out of frame, no pose)
 * contribute zeros at their fixed offsets.
 */
export function flattenLandmarks(
  set: LandmarkSet,
  landmarkCount: number = DEFAULT_LANDMARK_COUNT,
): number[] {
  if (landmarkCount < DETECTED_POINTS) {
    throw new Error(
      `landmarkCount ${landmarkCount} cannot hold the ${DETECTED_POINTS} detected points`,
    );
  }
  const out = new Array<number>(2 * landmarkCount).fill(0);
  fill(out, 0, set.pose, POSE_POINTS, "pose");
  fill(out, 2 * POSE_POINTS, set.leftHand, HAND_POINTS, "left hand");
  fill(out, 2 * (POSE_POINTS + HAND_POINTS), set.rightHand, HAND_POINTS, "right hand");
  return out;
}
