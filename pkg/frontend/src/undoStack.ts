/**
 * Command-pattern history for applied quick fixes: every application pushes
 * a snapshot of the model and its diagnosis, so undo restores both exactly.
 */

export class UndoStack<T> {
  private snapshots: T[] = [];

  push(snapshot: T): void {
    this.snapshots.push(snapshot);
  }

  undo(): T | undefined {
    return this.snapshots.pop();
  }

  get depth(): number {
    return this.snapshots.length;
  }

  clear(): void {
    this.snapshots = [];
  }
}
