package reports;

/** Prints monthly reports for the accounting department. */
public class ReportPrinter {
    /** Prints the report of a month. */
    public void printReport(int month) {
    }
}
