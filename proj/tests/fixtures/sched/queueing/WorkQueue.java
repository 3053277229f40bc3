package queueing;

/** First-in first-out list of pending work items. */
public class WorkQueue {
    /** Adds an item to the end of the list. */
    public void enqueue(String item) {
    }
}
