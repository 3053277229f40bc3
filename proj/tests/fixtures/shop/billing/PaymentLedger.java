package com.shop.billing;

/** Ledger of invoice payments and payment balances. */
public class PaymentLedger {
    private TaxCalculator taxes;

    /** Records an invoice payment in the ledger. */
    public void recordPayment(String invoice, double amount) {
        taxes.computeTax(1);
    }

    /** Payment balance of the ledger. */
    public double balance() {
        return 0.0;
    }
}
