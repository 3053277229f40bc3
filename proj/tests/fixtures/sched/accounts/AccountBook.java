package accounts;

/** Book of accounts with monthly balances. */
public class AccountBook {
    /** Balance at the end of a month. */
    public double balance(int month) {
        return 0.0;
    }
}
